#include "damt/ate.hpp"

#include <cmath>
#include <limits>

#include "damt/screening.hpp"

namespace damt {

FoldEffect fold_ate(const Dataset& data, std::uint32_t outcome,
                    std::span<const std::uint32_t> estimation_rows,
                    std::uint32_t fold_id) {
    const auto treatment = data.treatment();
    const double* col = data.column(outcome).data();

    CompensatedSum sum1;
    CompensatedSum sum0;
    std::size_t n1 = 0;
    std::size_t n0 = 0;
    for (const std::uint32_t i : estimation_rows) {
        if (treatment[i]) {
            sum1.add(col[i]);
            ++n1;
        } else {
            sum0.add(col[i]);
            ++n0;
        }
    }
    if (n1 == 0 || n0 == 0) {
        throw DegenerateSubsample("estimation sample lacks one treatment arm");
    }

    const double mean1 = sum1.value() / static_cast<double>(n1);
    const double mean0 = sum0.value() / static_cast<double>(n0);
    const double g = static_cast<double>(n1) / static_cast<double>(n1 + n0);

    FoldEffect fe;
    fe.outcome_index = outcome;
    fe.fold_id = fold_id;
    fe.ate = mean1 - mean0;
    fe.eic_values.reserve(estimation_rows.size());
    for (const std::uint32_t i : estimation_rows) {
        if (treatment[i]) {
            fe.eic_values.push_back((col[i] - mean1) / g);
        } else {
            fe.eic_values.push_back(-(col[i] - mean0) / (1.0 - g));
        }
    }
    return fe;
}

PooledEffect pool_effect(std::span<const FoldEffect> fold_effects) {
    if (fold_effects.empty()) throw EmptyPool("no fold effects to pool");

    CompensatedSum ate_sum;
    CompensatedSum sq_sum;
    std::size_t n_total = 0;
    for (const auto& fe : fold_effects) {
        if (fe.eic_values.empty()) throw EmptyPool("fold effect carries no influence values");
        ate_sum.add(fe.ate);
        for (const double d : fe.eic_values) sq_sum.add(d * d);
        n_total += fe.eic_values.size();
    }

    PooledEffect pe;
    pe.n_total = n_total;
    auto& est = pe.estimate;
    est.outcome_index = fold_effects.front().outcome_index;
    est.ate = ate_sum.value() / static_cast<double>(fold_effects.size());
    est.eic_variance = sq_sum.value() / static_cast<double>(n_total);

    if (est.eic_variance > 0.0) {
        est.z_stat = est.ate / std::sqrt(est.eic_variance / static_cast<double>(n_total));
        est.p_value = normal_p(est.z_stat);
    } else if (est.ate == 0.0) {
        est.z_stat = 0.0;
        est.p_value = 1.0;
    } else {
        // constant-within-arm column with a real mean difference
        est.z_stat = est.ate > 0 ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity();
        est.p_value = 0.0;
        pe.degenerate = true;
    }
    return pe;
}

double normal_p(double z) {
    return std::erfc(std::abs(z) / std::sqrt(2.0));
}

}  // namespace damt
