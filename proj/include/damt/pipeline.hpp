#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "damt/ate.hpp"
#include "damt/dataset.hpp"
#include "damt/fdr.hpp"
#include "damt/folds.hpp"
#include "damt/screening.hpp"

namespace damt {

struct DatasetFingerprint {
    std::size_t n = 0;
    std::size_t p = 0;
    std::size_t n_treated = 0;
    std::size_t n_control = 0;
    std::uint64_t checksum = 0;
};

struct ConfigEcho {
    std::string method;  // "adaptive" or "naive"
    std::uint32_t folds = 0;
    std::uint32_t top = 0;
    Direction direction = Direction::absolute;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    DatasetFingerprint dataset;
};

struct AnalysisReport {
    ConfigEcho echo;
    std::vector<ReportRow> rows;            // sorted by mean_cv_rank ascending
    std::vector<std::string> degenerate;    // outcomes with zero-variance nonzero effect
    std::vector<std::string> audit_files;   // paths written by the audit sink, if any
};

// Receives intermediate artifacts for audit output; implemented by the CLI
// layer. Methods are called from the orchestration thread only.
class AuditSink {
  public:
    virtual ~AuditSink() = default;
    virtual void on_fold_plan(const FoldPlan& plan) = 0;
    virtual void on_fold_ranking(const FoldScreenResult& fold) = 0;
};

// Full data-adaptive run: stratified folds, per-fold screening on the
// parameter-generating sample, rank aggregation, cross-fitted estimation, BH
// adjustment over the reduced set.
//
// Estimation is slot-wise: the k-th report row pools, across folds, each
// fold's estimate (on its own estimation sample) of the outcome that fold's
// parameter-generating sample ranked k-th. Every fold therefore contributes
// exactly its own selection, estimated on data disjoint from the sample that
// made that selection, and each observation enters the pooled influence
// values once. The row is labelled with the outcome of that rank position in
// the cross-fold aggregate (smallest mean rank), whose stability is reported
// via pct_top.
//
// Deterministic in (data, config); independent of `workers`.
AnalysisReport run_adaptive(const Dataset& data, const AnalysisConfig& config,
                            int workers = 1, AuditSink* audit = nullptr);

// Baseline: whole-sample estimate and influence-curve p-value per outcome, BH
// over all p hypotheses. Rows cover every outcome, ordered by the full-sample
// ranking under config.direction; mean_cv_rank holds that rank and pct_top is
// 100. Ignores config.folds/top/seed.
AnalysisReport run_naive(const Dataset& data, const AnalysisConfig& config,
                         int workers = 1);

// Adjusted p-values sorted ascending with 1-based plot rank.
std::vector<std::pair<std::uint32_t, double>> sorted_adjusted_series(
    const AnalysisReport& report);

}  // namespace damt
