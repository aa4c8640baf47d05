#pragma once

#include <cstdint>
#include <vector>

#include "damt/dataset.hpp"

namespace damt {

// Synthetic design: Y_ij = b0_j + effect_size * A_i * [j < n_true] + e_ij with
// b0_j standard normal (one draw per column), e_ij ~ N(0, sigma_e^2) and
// A_i ~ Bernoulli(1/2), redrawn if a single-arm vector results.
struct SimDesign {
    std::size_t p = 0;
    std::size_t n = 0;
    std::size_t n_true = 10;
    double effect_size = 1.0;
    double sigma_e = 0.1;
    std::uint64_t seed = 0;
};

struct SimResult {
    Dataset data;
    std::vector<std::uint32_t> truth;  // indices of true-effect columns
};

// Column generation uses one substream per column so output is independent of
// the worker count and bit-identical for a fixed seed. Outcome names are
// "Y1".."Yp". Throws DegenerateDraw if 64 treatment redraws all land in one
// arm.
SimResult generate(const SimDesign& design, int workers = 1);

}  // namespace damt
