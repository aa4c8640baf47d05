#include "damt/screening.hpp"

#include <algorithm>
#include <numeric>

#include "damt/parallel.hpp"

namespace damt {

namespace {

void split_arms(const Dataset& data, std::span<const std::uint32_t> rows,
                std::vector<std::uint32_t>& treated, std::vector<std::uint32_t>& control) {
    const auto treatment = data.treatment();
    treated.clear();
    control.clear();
    for (const std::uint32_t i : rows) {
        (treatment[i] ? treated : control).push_back(i);
    }
}

double arm_mean(const double* col, std::span<const std::uint32_t> rows) {
    CompensatedSum s;
    for (const std::uint32_t i : rows) s.add(col[i]);
    return s.value() / static_cast<double>(rows.size());
}

// Comparators define the full screening order: direction key, then index.
bool better(double a, std::uint32_t ia, double b, std::uint32_t ib, Direction dir) {
    double ka = a;
    double kb = b;
    switch (dir) {
        case Direction::up: break;
        case Direction::down:
            ka = -a;
            kb = -b;
            break;
        case Direction::absolute:
            ka = std::abs(a);
            kb = std::abs(b);
            break;
    }
    if (ka != kb) return ka > kb;
    return ia < ib;
}

}  // namespace

void fold_effect_sizes_into(const Dataset& data,
                            std::span<const std::uint32_t> treated_rows,
                            std::span<const std::uint32_t> control_rows,
                            std::span<double> out, int workers) {
    if (treated_rows.empty() || control_rows.empty()) {
        throw DegenerateSubsample("subsample lacks one treatment arm");
    }
    const std::size_t p = data.n_outcomes();
    if (out.size() != p) throw InconsistentDimensions("output span size mismatch");
    parallel_for(0, p, workers, [&](std::size_t j) {
        const double* col = data.column(j).data();
        out[j] = arm_mean(col, treated_rows) - arm_mean(col, control_rows);
    });
}

std::vector<double> fold_effect_sizes(const Dataset& data,
                                      std::span<const std::uint32_t> rows,
                                      int workers) {
    std::vector<std::uint32_t> treated;
    std::vector<std::uint32_t> control;
    split_arms(data, rows, treated, control);
    std::vector<double> out(data.n_outcomes());
    fold_effect_sizes_into(data, treated, control, out, workers);
    return out;
}

FoldScreenResult rank_fold(std::span<const double> effect_sizes, Direction direction,
                           std::uint32_t top, std::uint32_t fold_id) {
    const std::size_t p = effect_sizes.size();
    if (top < 1 || top > p) {
        throw Error("selection size must be in [1, p], got " + std::to_string(top));
    }
    for (std::size_t j = 0; j < p; ++j) {
        if (!std::isfinite(effect_sizes[j])) throw NonFiniteValue(0, j);
    }

    std::vector<std::uint32_t> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return better(effect_sizes[a], a, effect_sizes[b], b, direction);
    });

    FoldScreenResult result;
    result.fold_id = fold_id;
    result.effect_sizes.assign(effect_sizes.begin(), effect_sizes.end());
    result.ranks.resize(p);
    for (std::size_t k = 0; k < p; ++k) {
        result.ranks[order[k]] = static_cast<std::uint32_t>(k) + 1;
    }
    result.selected.assign(order.begin(), order.begin() + top);
    return result;
}

std::vector<std::uint32_t> select_top(std::span<const double> effect_sizes,
                                      Direction direction, std::uint32_t top) {
    const std::size_t p = effect_sizes.size();
    if (top < 1 || top > p) {
        throw Error("selection size must be in [1, p], got " + std::to_string(top));
    }
    std::vector<std::uint32_t> order(p);
    std::iota(order.begin(), order.end(), 0);
    auto cmp = [&](std::uint32_t a, std::uint32_t b) {
        return better(effect_sizes[a], a, effect_sizes[b], b, direction);
    };
    std::nth_element(order.begin(), order.begin() + (top - 1), order.end(), cmp);
    order.resize(top);
    std::sort(order.begin(), order.end(), cmp);
    return order;
}

void RankAccumulator::add(const FoldScreenResult& fold) {
    if (fold.ranks.size() != rank_sum_.size()) {
        throw InconsistentDimensions("fold covers " + std::to_string(fold.ranks.size()) +
                                     " outcomes, expected " + std::to_string(rank_sum_.size()));
    }
    for (std::size_t j = 0; j < rank_sum_.size(); ++j) {
        rank_sum_[j] += fold.ranks[j];
        if (fold.ranks[j] <= top_) ++top_count_[j];
    }
    ++folds_;
}

RankAggregate RankAccumulator::finish() const {
    if (folds_ == 0) throw Error("no folds accumulated");
    const std::size_t p = rank_sum_.size();
    if (top_ < 1 || top_ > p) {
        throw Error("selection size must be in [1, p], got " + std::to_string(top_));
    }
    RankAggregate agg;
    agg.mean_rank.resize(p);
    agg.pct_top.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        agg.mean_rank[j] = rank_sum_[j] / static_cast<double>(folds_);
        agg.pct_top[j] = 100.0 * static_cast<double>(top_count_[j]) / static_cast<double>(folds_);
    }
    std::vector<std::uint32_t> order(p);
    std::iota(order.begin(), order.end(), 0);
    auto cmp = [&](std::uint32_t a, std::uint32_t b) {
        if (agg.mean_rank[a] != agg.mean_rank[b]) return agg.mean_rank[a] < agg.mean_rank[b];
        return a < b;
    };
    std::nth_element(order.begin(), order.begin() + (top_ - 1), order.end(), cmp);
    order.resize(top_);
    std::sort(order.begin(), order.end(), cmp);
    agg.final_set = std::move(order);
    return agg;
}

RankAggregate aggregate_ranks(std::span<const FoldScreenResult> folds, std::uint32_t top) {
    if (folds.empty()) throw Error("no folds to aggregate");
    RankAccumulator acc(folds.front().ranks.size(), top);
    for (const auto& f : folds) acc.add(f);
    return acc.finish();
}

}  // namespace damt
