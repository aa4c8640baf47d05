// Command-line front end: analyze, naive, simulate, sweep.

#include <fstream>
#include <iostream>
#include <set>
#include <thread>

#include <CLI11.hpp>

#include "damt/io.hpp"
#include "damt/pipeline.hpp"
#include "damt/simulate.hpp"

namespace {

struct InputFlags {
    damt::InputSpec spec;
    std::string delimiter = ",";
    bool no_header = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--input", spec.path, "delimited input file")->required();
        cmd->add_option("--treatment-col", spec.treatment_column,
                        "treatment column name or 0-based index");
        cmd->add_option("--treatment-file", spec.treatment_file,
                        "single-column 0/1 file (transposed layout)");
        cmd->add_flag("--transpose", spec.transpose,
                      "rows are outcomes, first field is the outcome name");
        cmd->add_option("--delimiter", delimiter, "field delimiter (default ,)");
        cmd->add_flag("--no-header", no_header, "input has no header row");
    }

    damt::InputSpec resolve() const {
        damt::InputSpec s = spec;
        if (delimiter.size() != 1) {
            throw damt::Error("delimiter must be a single character");
        }
        s.delimiter = delimiter[0];
        s.has_header = !no_header;
        return s;
    }
};

int effective_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw damt::Error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw damt::Error("write failed: " + path);
}

std::size_t count_true_positives(const damt::AnalysisReport& report, double alpha,
                                 std::size_t n_true) {
    std::set<std::string> truth;
    for (std::size_t j = 1; j <= n_true; ++j) truth.insert("Y" + std::to_string(j));
    std::size_t hits = 0;
    for (const auto& row : report.rows) {
        if (row.adjusted_p <= alpha && truth.count(row.outcome_name)) ++hits;
    }
    return hits;
}

std::size_t count_rejections(const damt::AnalysisReport& report, double alpha) {
    std::size_t hits = 0;
    for (const auto& row : report.rows) {
        if (row.adjusted_p <= alpha) ++hits;
    }
    return hits;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"data-adaptive multiple testing for high-dimensional treatment screens"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "cross-validated screening + estimation");
    InputFlags analyze_input;
    analyze_input.attach(analyze);
    damt::AnalysisConfig acfg;
    std::string direction = "absolute";
    int threads = 0;
    std::string out_path;
    std::string format = "csv";
    std::string plot_out;
    std::string audit_dir;
    analyze->add_option("--folds", acfg.folds, "cross-validation folds (default 10)");
    analyze->add_option("--top", acfg.top, "reduced-set size (default 30)");
    analyze->add_option("--direction", direction, "up, down or absolute");
    analyze->add_option("--alpha", acfg.alpha, "FDR level (default 0.05)");
    analyze->add_option("--seed", acfg.seed, "fold randomization seed");
    analyze->add_option("--threads", threads, "worker threads (default: machine parallelism)");
    analyze->add_option("--out", out_path, "report file (default stdout)");
    analyze->add_option("--format", format, "csv or json");
    analyze->add_option("--plot-out", plot_out, "sorted adjusted p-value series file");
    analyze->add_option("--audit-dir", audit_dir, "directory for fold plan and rankings");

    // naive
    auto* naive = app.add_subcommand("naive", "whole-sample baseline over all outcomes");
    InputFlags naive_input;
    naive_input.attach(naive);
    damt::AnalysisConfig ncfg;
    std::string naive_direction = "absolute";
    int naive_threads = 0;
    std::string naive_out;
    std::string naive_format = "csv";
    std::string naive_plot_out;
    naive->add_option("--direction", naive_direction, "up, down or absolute");
    naive->add_option("--alpha", ncfg.alpha, "FDR level (default 0.05)");
    naive->add_option("--threads", naive_threads, "worker threads");
    naive->add_option("--out", naive_out, "report file (default stdout)");
    naive->add_option("--format", naive_format, "csv or json");
    naive->add_option("--plot-out", naive_plot_out, "sorted adjusted p-value series file");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "write a synthetic dataset");
    damt::SimDesign design;
    int sim_threads = 0;
    std::string sim_out;
    simulate->add_option("--p", design.p, "outcome count")->required();
    simulate->add_option("--n", design.n, "sample size")->required();
    simulate->add_option("--n-true", design.n_true, "true-effect count (default 10)");
    simulate->add_option("--effect", design.effect_size, "treatment effect size (default 1)");
    simulate->add_option("--sigma", design.sigma_e, "noise standard deviation (default 0.1)");
    simulate->add_option("--seed", design.seed, "generator seed");
    simulate->add_option("--threads", sim_threads, "worker threads");
    simulate->add_option("--out", sim_out, "output dataset file")->required();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "simulate + analyze + naive over a grid");
    std::size_t sweep_p = 10000;
    std::vector<std::size_t> sweep_n{100};
    std::size_t sweep_n_true = 10;
    double sweep_effect = 1.0;
    std::vector<double> sweep_sigma{0.1};
    std::size_t sweep_seeds = 20;
    std::uint64_t sweep_seed_base = 1;
    damt::AnalysisConfig scfg;
    scfg.top = 15;
    std::string sweep_direction = "absolute";
    int sweep_threads = 0;
    std::string sweep_out;
    sweep->add_option("--p", sweep_p, "outcome count (default 10000)");
    sweep->add_option("--n", sweep_n, "sample sizes (repeatable)");
    sweep->add_option("--n-true", sweep_n_true, "true-effect count (default 10)");
    sweep->add_option("--effect", sweep_effect, "effect size (default 1)");
    sweep->add_option("--sigma", sweep_sigma, "noise levels (repeatable)");
    sweep->add_option("--seeds", sweep_seeds, "number of seeds (default 20)");
    sweep->add_option("--seed", sweep_seed_base, "base seed (default 1)");
    sweep->add_option("--folds", scfg.folds, "folds (default 10)");
    sweep->add_option("--top", scfg.top, "reduced-set size (default 15)");
    sweep->add_option("--direction", sweep_direction, "up, down or absolute");
    sweep->add_option("--alpha", scfg.alpha, "FDR level (default 0.05)");
    sweep->add_option("--threads", sweep_threads, "worker threads");
    sweep->add_option("--out", sweep_out, "metrics file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (analyze->parsed()) {
            acfg.direction = damt::direction_from_string(direction);
            if (format != "csv" && format != "json") {
                throw damt::Error("unknown format: " + format);
            }
            const damt::Dataset data = damt::load_dataset(analyze_input.resolve());
            std::unique_ptr<damt::DirectoryAuditSink> audit;
            if (!audit_dir.empty()) {
                audit = std::make_unique<damt::DirectoryAuditSink>(audit_dir,
                                                                   data.outcome_names());
            }
            damt::AnalysisReport report =
                damt::run_adaptive(data, acfg, effective_threads(threads), audit.get());
            if (audit) report.audit_files = audit->files_written();
            write_text(out_path,
                       damt::emit_report(report, format == "csv"
                                                     ? damt::ReportFormat::delimited
                                                     : damt::ReportFormat::structured));
            if (!plot_out.empty()) write_text(plot_out, damt::emit_plot_data(report));
        } else if (naive->parsed()) {
            ncfg.direction = damt::direction_from_string(naive_direction);
            if (naive_format != "csv" && naive_format != "json") {
                throw damt::Error("unknown format: " + naive_format);
            }
            const damt::Dataset data = damt::load_dataset(naive_input.resolve());
            const damt::AnalysisReport report =
                damt::run_naive(data, ncfg, effective_threads(naive_threads));
            write_text(naive_out,
                       damt::emit_report(report, naive_format == "csv"
                                                     ? damt::ReportFormat::delimited
                                                     : damt::ReportFormat::structured));
            if (!naive_plot_out.empty()) write_text(naive_plot_out, damt::emit_plot_data(report));
        } else if (simulate->parsed()) {
            const damt::SimResult sim =
                damt::generate(design, effective_threads(sim_threads));
            damt::write_dataset_csv(sim.data, sim_out);
        } else if (sweep->parsed()) {
            scfg.direction = damt::direction_from_string(sweep_direction);
            const int workers = effective_threads(sweep_threads);
            std::vector<damt::SweepRow> rows;
            for (const std::size_t n : sweep_n) {
                for (const double sigma : sweep_sigma) {
                    for (std::size_t s = 0; s < sweep_seeds; ++s) {
                        damt::SimDesign d;
                        d.p = sweep_p;
                        d.n = n;
                        d.n_true = sweep_n_true;
                        d.effect_size = sweep_effect;
                        d.sigma_e = sigma;
                        d.seed = sweep_seed_base + s;
                        const damt::SimResult sim = damt::generate(d, workers);
                        damt::AnalysisConfig cfg = scfg;
                        cfg.seed = d.seed;
                        const auto adaptive = damt::run_adaptive(sim.data, cfg, workers);
                        const auto base = damt::run_naive(sim.data, cfg, workers);
                        rows.push_back({d.seed, sigma, n, "adaptive",
                                        count_true_positives(adaptive, cfg.alpha, d.n_true),
                                        count_rejections(adaptive, cfg.alpha)});
                        rows.push_back({d.seed, sigma, n, "naive",
                                        count_true_positives(base, cfg.alpha, d.n_true),
                                        count_rejections(base, cfg.alpha)});
                    }
                }
            }
            write_text(sweep_out, damt::emit_metrics(rows));
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
