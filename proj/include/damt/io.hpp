#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "damt/dataset.hpp"
#include "damt/folds.hpp"
#include "damt/pipeline.hpp"
#include "damt/screening.hpp"

namespace damt {

// Delimited-text ingestion. Default layout: rows are observations, one column
// holds the 0/1 treatment (named, or a 0-based column index), every other
// column is an outcome. With `transpose`, rows are outcomes (name in the
// first field, as in expression matrices) and the treatment vector comes from
// a separate single-column file.
struct InputSpec {
    std::string path;
    char delimiter = ',';
    std::string treatment_column;  // name or 0-based index; empty in transpose mode
    std::string treatment_file;    // transpose mode only
    bool transpose = false;
    bool has_header = true;
};

// Parses per the spec and validates. Decimal parsing is locale-independent;
// any unparseable cell raises ParseError with its 1-based line and field.
Dataset load_dataset(const InputSpec& spec);

enum class ReportFormat { delimited, structured };

// Delimited: exactly name,ate,raw_p,adjusted_p,mean_cv_rank,pct_top with reals
// at 6 significant digits. Structured: JSON that also embeds the config echo
// and dataset fingerprint. Both are byte-deterministic.
std::string emit_report(const AnalysisReport& report, ReportFormat format);

// Two-column plot data: 1-based rank, adjusted p-value ascending.
std::string emit_plot_data(const AnalysisReport& report);

// Two-column audit table: 0-based row index, fold label.
std::string emit_fold_plan(const FoldPlan& plan);

// Per-fold audit table: fold, outcome, effect, rank (one line per outcome).
std::string emit_fold_ranking(const FoldScreenResult& fold,
                              const std::vector<std::string>& names);

struct SweepRow {
    std::uint64_t seed = 0;
    double sigma = 0.0;
    std::size_t n = 0;
    std::string method;
    std::size_t true_positives = 0;
    std::size_t rejections = 0;
};

std::string emit_metrics(const std::vector<SweepRow>& rows);

// Writes a dataset as delimited text in the default input layout (treatment
// column "A" first), values with exact round-trip formatting.
void write_dataset_csv(const Dataset& data, const std::string& path);

// AuditSink writing fold_plan.csv and fold_###_ranking.csv into a directory.
class DirectoryAuditSink : public AuditSink {
  public:
    DirectoryAuditSink(std::string directory, const std::vector<std::string>& names);
    void on_fold_plan(const FoldPlan& plan) override;
    void on_fold_ranking(const FoldScreenResult& fold) override;
    const std::vector<std::string>& files_written() const { return files_; }

  private:
    std::string dir_;
    const std::vector<std::string>& names_;
    std::vector<std::string> files_;
};

// printf-%g-style formatting via std::to_chars (locale-free).
std::string format_double(double v, int significant_digits = 6);
// Shortest representation that round-trips exactly.
std::string format_double_exact(double v);

}  // namespace damt
