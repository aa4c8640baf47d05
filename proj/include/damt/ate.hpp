#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "damt/dataset.hpp"

namespace damt {

// One outcome's estimate on one fold's estimation sample, with per-observation
// influence values aligned to the row order passed to fold_ate.
struct FoldEffect {
    std::uint32_t outcome_index = 0;
    std::uint32_t fold_id = 0;
    double ate = 0.0;
    std::vector<double> eic_values;
};

struct PooledEffect {
    EffectEstimate estimate;
    std::size_t n_total = 0;
    bool degenerate = false;  // zero influence variance with nonzero effect
};

// Unadjusted ATE on the given rows plus plug-in influence values: with no
// baseline covariates the regression means are the arm means, the augmentation
// term cancels, and the influence value reduces to (Y - arm mean) / arm share,
// signed by arm. Throws DegenerateSubsample if the rows lack an arm.
FoldEffect fold_ate(const Dataset& data, std::uint32_t outcome,
                    std::span<const std::uint32_t> estimation_rows,
                    std::uint32_t fold_id = 0);

// Averages the fold estimates and pools the influence values: ate = mean of
// fold ates, variance = mean of squared pooled influence values, z = ate /
// sqrt(variance / n_total), p = two-sided normal tail. Fold estimation
// samples must be disjoint so each observation contributes one value.
// Zero-variance policy: ate == 0 gives p = 1; ate != 0 gives p = 0 and the
// degenerate flag. Throws EmptyPool when no folds are given.
PooledEffect pool_effect(std::span<const FoldEffect> fold_effects);

// Two-sided standard normal tail probability 2*Phi(-|z|), evaluated as
// erfc(|z|/sqrt(2)).
double normal_p(double z);

}  // namespace damt
