#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "damt/dataset.hpp"

namespace damt {

// Treatment-stratified partition of {0..n-1} into V folds, labels 1..V.
struct FoldPlan {
    std::uint32_t folds = 0;
    std::vector<std::uint32_t> assignment;              // per row, in 1..V
    std::vector<std::vector<std::uint32_t>> fold_rows;  // per fold, ascending

    const std::vector<std::uint32_t>& estimation_rows(std::uint32_t v) const;
};

// Shuffles each arm's row list with the seeded generator, then deals both
// lists round-robin to folds with a single rotating cursor (treated first,
// control continuing where the treated deal stopped). This keeps per-fold arm
// counts within 1 of arm_size/V and overall fold sizes within 1 of n/V.
// Deterministic in (treatment vector, V, seed). Throws TooManyFolds when V
// exceeds either arm size.
FoldPlan assign_folds(const Dataset& data, std::uint32_t V, std::uint64_t seed);

// (parameter-generating rows, estimation rows) for fold v in 1..V, both
// ascending; the two sets partition {0..n-1}. Throws FoldOutOfRange.
std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>
fold_views(const FoldPlan& plan, std::uint32_t v);

}  // namespace damt
