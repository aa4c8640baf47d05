#include "damt/pipeline.hpp"

#include <algorithm>

#include "damt/parallel.hpp"

namespace damt {

namespace {

DatasetFingerprint fingerprint_of(const Dataset& data) {
    DatasetFingerprint fp;
    fp.n = data.n_obs();
    fp.p = data.n_outcomes();
    fp.n_treated = data.treated_rows().size();
    fp.n_control = data.control_rows().size();
    fp.checksum = data.fingerprint();
    return fp;
}

void split_param_arms(const Dataset& data, const FoldPlan& plan, std::uint32_t v,
                      std::vector<std::uint32_t>& treated,
                      std::vector<std::uint32_t>& control) {
    const auto treatment = data.treatment();
    treated.clear();
    control.clear();
    for (std::uint32_t i = 0; i < plan.assignment.size(); ++i) {
        if (plan.assignment[i] == v) continue;
        (treatment[i] ? treated : control).push_back(i);
    }
}

}  // namespace

AnalysisReport run_adaptive(const Dataset& data, const AnalysisConfig& config,
                            int workers, AuditSink* audit) {
    config.validate(data);
    const std::size_t p = data.n_outcomes();
    const std::uint32_t V = config.folds;
    const std::uint32_t top = config.top;

    const FoldPlan plan = assign_folds(data, V, config.seed);
    if (audit) audit->on_fold_plan(plan);

    RankAccumulator ranks(p, top);
    std::vector<std::vector<std::uint32_t>> slot_outcomes(V);
    std::vector<double> effects(p);
    std::vector<std::uint32_t> param_treated;
    std::vector<std::uint32_t> param_control;

    for (std::uint32_t v = 1; v <= V; ++v) {
        split_param_arms(data, plan, v, param_treated, param_control);
        try {
            fold_effect_sizes_into(data, param_treated, param_control, effects, workers);
            FoldScreenResult fold = rank_fold(effects, config.direction, top, v);
            ranks.add(fold);
            slot_outcomes[v - 1] = fold.selected;
            if (audit) audit->on_fold_ranking(fold);
        } catch (const Error& e) {
            throw Error("fold " + std::to_string(v) + ": " + e.what());
        }
    }

    const RankAggregate agg = ranks.finish();

    std::vector<PooledEffect> pooled(top);
    parallel_for(0, top, workers, [&](std::size_t k) {
        std::vector<FoldEffect> fold_effects;
        fold_effects.reserve(V);
        for (std::uint32_t v = 1; v <= V; ++v) {
            fold_effects.push_back(
                fold_ate(data, slot_outcomes[v - 1][k], plan.estimation_rows(v), v));
        }
        pooled[k] = pool_effect(fold_effects);
    });

    std::vector<double> raw(top);
    for (std::uint32_t k = 0; k < top; ++k) raw[k] = pooled[k].estimate.p_value;
    const AdjustedPValues adj = bh_adjust(raw);

    AnalysisReport report;
    report.echo = {"adaptive", V,           top,        config.direction,
                   config.alpha, config.seed, fingerprint_of(data)};
    report.rows.reserve(top);
    for (std::uint32_t k = 0; k < top; ++k) {
        const std::uint32_t j = agg.final_set[k];
        report.rows.push_back({data.outcome_names()[j], pooled[k].estimate.ate, raw[k],
                               adj.adjusted[k], agg.mean_rank[j], agg.pct_top[j]});
        if (pooled[k].degenerate) report.degenerate.push_back(data.outcome_names()[j]);
    }
    return report;
}

AnalysisReport run_naive(const Dataset& data, const AnalysisConfig& config, int workers) {
    if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw Error("alpha must be in (0,1)");
    const std::size_t p = data.n_outcomes();

    std::vector<std::uint32_t> all_rows(data.n_obs());
    for (std::uint32_t i = 0; i < data.n_obs(); ++i) all_rows[i] = i;

    std::vector<PooledEffect> pooled(p);
    parallel_for(0, p, workers, [&](std::size_t j) {
        const FoldEffect fe = fold_ate(data, static_cast<std::uint32_t>(j), all_rows, 1);
        pooled[j] = pool_effect(std::span<const FoldEffect>(&fe, 1));
    });

    std::vector<double> effects(p);
    for (std::size_t j = 0; j < p; ++j) effects[j] = pooled[j].estimate.ate;
    const FoldScreenResult ranking =
        rank_fold(effects, config.direction, static_cast<std::uint32_t>(p), 1);

    std::vector<double> raw(p);
    for (std::size_t j = 0; j < p; ++j) raw[j] = pooled[j].estimate.p_value;
    const AdjustedPValues adj = bh_adjust(raw);

    AnalysisReport report;
    // what actually ran: one whole-sample fold over all p outcomes
    report.echo = {"naive",      1,           static_cast<std::uint32_t>(p), config.direction,
                   config.alpha, config.seed, fingerprint_of(data)};
    report.rows.reserve(p);
    for (std::size_t k = 0; k < p; ++k) {
        const std::uint32_t j = ranking.selected[k];
        report.rows.push_back({data.outcome_names()[j], pooled[j].estimate.ate, raw[j],
                               adj.adjusted[j], static_cast<double>(ranking.ranks[j]), 100.0});
        if (pooled[j].degenerate) report.degenerate.push_back(data.outcome_names()[j]);
    }
    return report;
}

std::vector<std::pair<std::uint32_t, double>> sorted_adjusted_series(
    const AnalysisReport& report) {
    std::vector<double> values;
    values.reserve(report.rows.size());
    for (const auto& row : report.rows) values.push_back(row.adjusted_p);
    std::stable_sort(values.begin(), values.end());
    std::vector<std::pair<std::uint32_t, double>> series;
    series.reserve(values.size());
    for (std::uint32_t i = 0; i < values.size(); ++i) series.emplace_back(i + 1, values[i]);
    return series;
}

}  // namespace damt
