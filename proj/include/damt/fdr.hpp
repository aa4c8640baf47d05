#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "damt/errors.hpp"

namespace damt {

struct AdjustedPValues {
    std::vector<double> raw;
    std::vector<double> adjusted;  // aligned by index
};

// Benjamini-Hochberg step-up adjusted p-values: over the ascending order,
// adjusted_(i) = min(1, min_{j >= i} raw_(j) * m / j), mapped back to input
// positions. Ties share one adjusted value. Throws OutOfRangeP for raw values
// outside [0,1] or an empty input.
AdjustedPValues bh_adjust(std::span<const double> raw);

// Indices (ascending) with adjusted <= alpha.
std::vector<std::uint32_t> reject_at(const AdjustedPValues& adj, double alpha);

}  // namespace damt
