#include "damt/folds.hpp"

#include <algorithm>

#include "damt/rng.hpp"

namespace damt {

const std::vector<std::uint32_t>& FoldPlan::estimation_rows(std::uint32_t v) const {
    if (v < 1 || v > folds) {
        throw FoldOutOfRange("fold " + std::to_string(v) + " out of 1.." + std::to_string(folds));
    }
    return fold_rows[v - 1];
}

FoldPlan assign_folds(const Dataset& data, std::uint32_t V, std::uint64_t seed) {
    if (V < 2) throw Error("fold count must be at least 2");
    std::vector<std::uint32_t> treated(data.treated_rows().begin(), data.treated_rows().end());
    std::vector<std::uint32_t> control(data.control_rows().begin(), data.control_rows().end());
    if (V > treated.size() || V > control.size()) {
        throw TooManyFolds("fold count " + std::to_string(V) + " exceeds an arm size (" +
                           std::to_string(treated.size()) + " treated, " +
                           std::to_string(control.size()) + " control)");
    }

    auto gen = substream(seed, StreamTag::fold_shuffle);
    gen.shuffle(treated);
    gen.shuffle(control);

    FoldPlan plan;
    plan.folds = V;
    plan.assignment.assign(data.n_obs(), 0);
    std::uint64_t cursor = 0;
    for (const auto* arm : {&treated, &control}) {
        for (std::size_t k = 0; k < arm->size(); ++k) {
            plan.assignment[(*arm)[k]] =
                static_cast<std::uint32_t>((cursor + k) % V) + 1;
        }
        cursor = (cursor + arm->size()) % V;
    }

    plan.fold_rows.resize(V);
    for (std::uint32_t i = 0; i < data.n_obs(); ++i) {
        plan.fold_rows[plan.assignment[i] - 1].push_back(i);
    }
    return plan;
}

std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>
fold_views(const FoldPlan& plan, std::uint32_t v) {
    if (v < 1 || v > plan.folds) {
        throw FoldOutOfRange("fold " + std::to_string(v) + " out of 1.." +
                             std::to_string(plan.folds));
    }
    std::vector<std::uint32_t> param;
    param.reserve(plan.assignment.size() - plan.fold_rows[v - 1].size());
    for (std::uint32_t i = 0; i < plan.assignment.size(); ++i) {
        if (plan.assignment[i] != v) param.push_back(i);
    }
    return {std::move(param), plan.fold_rows[v - 1]};
}

}  // namespace damt
