#include "damt/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace damt {

std::string format_double(double v, int significant_digits) {
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, significant_digits);
    return {buf, res.ptr};
}

std::string format_double_exact(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line, char delim) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delim, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

double parse_cell(std::string_view cell, const std::string& path, std::size_t line,
                  std::size_t field) {
    const std::string_view t = trim(cell);
    if (t.empty()) throw ParseError(path, line, field, "empty cell");
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (*first == '+') ++first;  // from_chars rejects a leading plus
    double value = 0.0;
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last) {
        throw ParseError(path, line, field,
                         "cannot parse \"" + std::string(cell) + "\" as a number");
    }
    return value;
}

std::uint8_t parse_treatment_cell(std::string_view cell, const std::string& path,
                                  std::size_t line, std::size_t field) {
    const std::string_view t = trim(cell);
    if (t == "0") return 0;
    if (t == "1") return 1;
    throw ParseError(path, line, field,
                     "treatment value \"" + std::string(cell) + "\" is not 0 or 1");
}

struct Lines {
    std::string text;
    std::vector<std::pair<std::size_t, std::string_view>> rows;  // (1-based line, content)
};

Lines read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, 0, 0, "cannot open file");
    Lines out;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    out.text = std::move(buffer).str();

    std::string_view all(out.text);
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= all.size()) {
        const std::size_t pos = all.find('\n', start);
        std::string_view line = pos == std::string_view::npos
                                    ? all.substr(start)
                                    : all.substr(start, pos - start);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) out.rows.emplace_back(line_no, line);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

// treatment_column as 0-based index if all digits, else header name
std::size_t resolve_treatment_column(const InputSpec& spec,
                                     const std::vector<std::string_view>& header,
                                     std::size_t n_fields) {
    const std::string& key = spec.treatment_column;
    if (key.empty()) {
        throw ParseError(spec.path, 0, 0, "treatment column not specified");
    }
    const bool numeric = !key.empty() && key.find_first_not_of("0123456789") == std::string::npos;
    if (numeric) {
        std::size_t idx = 0;
        const auto res = std::from_chars(key.data(), key.data() + key.size(), idx);
        if (res.ec != std::errc{} || idx >= n_fields) {
            throw ParseError(spec.path, 0, 0,
                             "treatment column index " + key + " out of range (" +
                                 std::to_string(n_fields) + " columns)");
        }
        return idx;
    }
    if (header.empty()) {
        throw ParseError(spec.path, 0, 0,
                         "treatment column \"" + key + "\" needs a header row");
    }
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (trim(header[j]) == key) return j;
    }
    throw ParseError(spec.path, 0, 0, "treatment column \"" + key + "\" not found in header");
}

Dataset load_standard(const InputSpec& spec) {
    const Lines lines = read_lines(spec.path);
    if (lines.rows.empty()) throw ParseError(spec.path, 0, 0, "file has no data");

    std::size_t first_data = 0;
    std::vector<std::string_view> header;
    if (spec.has_header) {
        header = split_fields(lines.rows[0].second, spec.delimiter);
        first_data = 1;
    }
    if (lines.rows.size() <= first_data) {
        throw ParseError(spec.path, 0, 0, "file has no data rows");
    }

    const std::size_t n_fields =
        split_fields(lines.rows[first_data].second, spec.delimiter).size();
    if (n_fields < 2) {
        throw ParseError(spec.path, lines.rows[first_data].first, 0,
                         "need at least a treatment column and one outcome column");
    }
    if (spec.has_header && header.size() != n_fields) {
        throw ParseError(spec.path, lines.rows[0].first, 0,
                         "header has " + std::to_string(header.size()) +
                             " fields but data rows have " + std::to_string(n_fields));
    }
    const std::size_t a_col = resolve_treatment_column(spec, header, n_fields);

    const std::size_t n = lines.rows.size() - first_data;
    const std::size_t p = n_fields - 1;

    std::vector<std::string> names;
    names.reserve(p);
    for (std::size_t j = 0; j < n_fields; ++j) {
        if (j == a_col) continue;
        if (spec.has_header) {
            names.emplace_back(trim(header[j]));
        } else {
            names.emplace_back("V" + std::to_string(j));
        }
    }

    std::vector<double> cols(n * p);
    std::vector<std::uint8_t> treatment(n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto [line_no, line] = lines.rows[first_data + r];
        const auto fields = split_fields(line, spec.delimiter);
        if (fields.size() != n_fields) {
            throw ParseError(spec.path, line_no, 0,
                             "expected " + std::to_string(n_fields) + " fields, got " +
                                 std::to_string(fields.size()));
        }
        std::size_t out_j = 0;
        for (std::size_t j = 0; j < n_fields; ++j) {
            if (j == a_col) {
                treatment[r] = parse_treatment_cell(fields[j], spec.path, line_no, j + 1);
            } else {
                cols[out_j * n + r] = parse_cell(fields[j], spec.path, line_no, j + 1);
                ++out_j;
            }
        }
    }
    return validate_dataset(std::move(cols), std::move(treatment), std::move(names));
}

Dataset load_transposed(const InputSpec& spec) {
    if (spec.treatment_file.empty()) {
        throw ParseError(spec.path, 0, 0, "transposed input needs a separate treatment file");
    }
    const Lines tlines = read_lines(spec.treatment_file);
    std::vector<std::uint8_t> treatment;
    treatment.reserve(tlines.rows.size());
    for (const auto& [line_no, line] : tlines.rows) {
        treatment.push_back(parse_treatment_cell(line, spec.treatment_file, line_no, 1));
    }
    const std::size_t n = treatment.size();
    if (n == 0) throw ParseError(spec.treatment_file, 0, 0, "treatment file is empty");

    const Lines lines = read_lines(spec.path);
    std::size_t first_data = 0;
    if (spec.has_header) {
        if (lines.rows.empty()) throw ParseError(spec.path, 0, 0, "file has no data");
        const auto fields = split_fields(lines.rows[0].second, spec.delimiter);
        if (fields.size() != n && fields.size() != n + 1) {
            throw ParseError(spec.path, lines.rows[0].first, 0,
                             "header has " + std::to_string(fields.size()) +
                                 " fields, expected " + std::to_string(n) + " or " +
                                 std::to_string(n + 1));
        }
        first_data = 1;
    }
    if (lines.rows.size() <= first_data) {
        throw ParseError(spec.path, 0, 0, "file has no data rows");
    }

    const std::size_t p = lines.rows.size() - first_data;
    std::vector<std::string> names;
    names.reserve(p);
    std::vector<double> cols(n * p);
    for (std::size_t r = 0; r < p; ++r) {
        const auto [line_no, line] = lines.rows[first_data + r];
        const auto fields = split_fields(line, spec.delimiter);
        if (fields.size() != n + 1) {
            throw ParseError(spec.path, line_no, 0,
                             "expected name plus " + std::to_string(n) + " values, got " +
                                 std::to_string(fields.size()) + " fields");
        }
        names.emplace_back(trim(fields[0]));
        for (std::size_t i = 0; i < n; ++i) {
            cols[r * n + i] = parse_cell(fields[i + 1], spec.path, line_no, i + 2);
        }
    }
    return validate_dataset(std::move(cols), std::move(treatment), std::move(names));
}

std::string checksum_hex(std::uint64_t h) {
    char buf[17];
    for (int i = 15; i >= 0; --i) {
        buf[i] = "0123456789abcdef"[h & 0xF];
        h >>= 4;
    }
    buf[16] = '\0';
    return buf;
}

}  // namespace

Dataset load_dataset(const InputSpec& spec) {
    return spec.transpose ? load_transposed(spec) : load_standard(spec);
}

std::string emit_report(const AnalysisReport& report, ReportFormat format) {
    if (format == ReportFormat::delimited) {
        std::string out = "name,ate,raw_p,adjusted_p,mean_cv_rank,pct_top\n";
        for (const auto& row : report.rows) {
            out += row.outcome_name;
            out += ',';
            out += format_double(row.ate);
            out += ',';
            out += format_double(row.raw_p);
            out += ',';
            out += format_double(row.adjusted_p);
            out += ',';
            out += format_double(row.mean_cv_rank);
            out += ',';
            out += format_double(row.pct_top);
            out += '\n';
        }
        return out;
    }

    nlohmann::ordered_json j;
    j["method"] = report.echo.method;
    j["folds"] = report.echo.folds;
    j["top"] = report.echo.top;
    j["direction"] = to_string(report.echo.direction);
    j["alpha"] = report.echo.alpha;
    j["seed"] = report.echo.seed;
    j["dataset"] = {{"n", report.echo.dataset.n},
                    {"p", report.echo.dataset.p},
                    {"n_treated", report.echo.dataset.n_treated},
                    {"n_control", report.echo.dataset.n_control},
                    {"checksum", checksum_hex(report.echo.dataset.checksum)}};
    j["degenerate"] = report.degenerate;
    j["audit_files"] = report.audit_files;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"name", row.outcome_name},
                        {"ate", row.ate},
                        {"raw_p", row.raw_p},
                        {"adjusted_p", row.adjusted_p},
                        {"mean_cv_rank", row.mean_cv_rank},
                        {"pct_top", row.pct_top}});
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string emit_plot_data(const AnalysisReport& report) {
    std::string out = "rank,adjusted_p\n";
    for (const auto& [rank, value] : sorted_adjusted_series(report)) {
        out += std::to_string(rank);
        out += ',';
        out += format_double(value);
        out += '\n';
    }
    return out;
}

std::string emit_fold_plan(const FoldPlan& plan) {
    std::string out = "row,fold\n";
    for (std::size_t i = 0; i < plan.assignment.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += std::to_string(plan.assignment[i]);
        out += '\n';
    }
    return out;
}

std::string emit_fold_ranking(const FoldScreenResult& fold,
                              const std::vector<std::string>& names) {
    std::string out = "fold,outcome,effect,rank\n";
    for (std::size_t j = 0; j < fold.effect_sizes.size(); ++j) {
        out += std::to_string(fold.fold_id);
        out += ',';
        out += names[j];
        out += ',';
        out += format_double(fold.effect_sizes[j]);
        out += ',';
        out += std::to_string(fold.ranks[j]);
        out += '\n';
    }
    return out;
}

std::string emit_metrics(const std::vector<SweepRow>& rows) {
    std::string out = "seed,sigma,n,method,true_positives,rejections\n";
    for (const auto& r : rows) {
        out += std::to_string(r.seed);
        out += ',';
        out += format_double(r.sigma);
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += r.method;
        out += ',';
        out += std::to_string(r.true_positives);
        out += ',';
        out += std::to_string(r.rejections);
        out += '\n';
    }
    return out;
}

void write_dataset_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << "A";
    for (const auto& name : data.outcome_names()) out << ',' << name;
    out << '\n';
    std::string line;
    for (std::size_t i = 0; i < data.n_obs(); ++i) {
        line.clear();
        line += data.treatment()[i] ? '1' : '0';
        for (std::size_t j = 0; j < data.n_outcomes(); ++j) {
            line += ',';
            line += format_double_exact(data.column(j)[i]);
        }
        line += '\n';
        out << line;
    }
    if (!out) throw Error("write failed: " + path);
}

DirectoryAuditSink::DirectoryAuditSink(std::string directory,
                                       const std::vector<std::string>& names)
    : dir_(std::move(directory)), names_(names) {
    std::filesystem::create_directories(dir_);
}

void DirectoryAuditSink::on_fold_plan(const FoldPlan& plan) {
    const std::string path = dir_ + "/fold_plan.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << emit_fold_plan(plan);
    files_.push_back(path);
}

void DirectoryAuditSink::on_fold_ranking(const FoldScreenResult& fold) {
    char suffix[32];
    std::snprintf(suffix, sizeof suffix, "fold_%03u_ranking.csv", fold.fold_id);
    const std::string path = dir_ + "/" + suffix;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << emit_fold_ranking(fold, names_);
    files_.push_back(path);
}

}  // namespace damt
