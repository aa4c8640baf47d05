#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "damt/dataset.hpp"

namespace damt {

// Neumaier-compensated accumulator; strictly left-to-right addition so sums
// are identical for any worker count.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + carry; }
};

// One fold's screening output: per-outcome effect sizes, the full rank
// permutation (1 = best under the direction), and the ordered top-`top` set.
struct FoldScreenResult {
    std::uint32_t fold_id = 0;
    std::vector<double> effect_sizes;
    std::vector<std::uint32_t> ranks;     // permutation of 1..p
    std::vector<std::uint32_t> selected;  // outcome indices, rank order
};

struct RankAggregate {
    std::vector<double> mean_rank;
    std::vector<double> pct_top;             // in [0,100]
    std::vector<std::uint32_t> final_set;    // `top` outcomes by mean rank
};

// Difference of arm means per outcome over the given rows: mean(Y_j | A=1) -
// mean(Y_j | A=0). Parallel across columns; each column is summed by exactly
// one worker in ascending row order. Throws DegenerateSubsample when the row
// set lacks an arm.
std::vector<double> fold_effect_sizes(const Dataset& data,
                                      std::span<const std::uint32_t> rows,
                                      int workers = 1);

// Kernel variant with pre-split arm row lists; writes into `out` (length p).
void fold_effect_sizes_into(const Dataset& data,
                            std::span<const std::uint32_t> treated_rows,
                            std::span<const std::uint32_t> control_rows,
                            std::span<double> out, int workers);

// Total order per direction: up = largest signed effect first, down =
// smallest signed first, absolute = largest magnitude first; ties broken by
// ascending outcome index. Stores the full rank permutation and the ordered
// top-`top` selection.
FoldScreenResult rank_fold(std::span<const double> effect_sizes, Direction direction,
                           std::uint32_t top, std::uint32_t fold_id = 0);

// Partial selection: the ordered top-`top` indices without ranking all p.
std::vector<std::uint32_t> select_top(std::span<const double> effect_sizes,
                                      Direction direction, std::uint32_t top);

// Mean rank and top-set appearance percentage across folds; final set is the
// `top` outcomes with smallest mean rank, ties by ascending index. Throws
// InconsistentDimensions if folds disagree on p.
RankAggregate aggregate_ranks(std::span<const FoldScreenResult> folds, std::uint32_t top);

// Incremental form of aggregate_ranks used by the pipeline so only running
// totals are kept in memory.
class RankAccumulator {
  public:
    explicit RankAccumulator(std::size_t p, std::uint32_t top)
        : top_(top), rank_sum_(p, 0.0), top_count_(p, 0) {}

    void add(const FoldScreenResult& fold);
    RankAggregate finish() const;
    std::uint32_t folds_seen() const { return folds_; }

  private:
    std::uint32_t top_;
    std::uint32_t folds_ = 0;
    std::vector<double> rank_sum_;
    std::vector<std::uint32_t> top_count_;
};

}  // namespace damt
