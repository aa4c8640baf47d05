#include "damt/fdr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace damt {

AdjustedPValues bh_adjust(std::span<const double> raw) {
    const std::size_t m = raw.size();
    if (m == 0) throw OutOfRangeP("need at least one p-value");
    for (std::size_t i = 0; i < m; ++i) {
        if (!(raw[i] >= 0.0 && raw[i] <= 1.0)) {
            throw OutOfRangeP("p-value at index " + std::to_string(i) + " outside [0,1]");
        }
    }

    std::vector<std::uint32_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (raw[a] != raw[b]) return raw[a] < raw[b];
        return a < b;
    });

    AdjustedPValues out;
    out.raw.assign(raw.begin(), raw.end());
    out.adjusted.resize(m);
    double tail_min = 1.0;
    for (std::size_t k = m; k-- > 0;) {
        const double scaled = raw[order[k]] * static_cast<double>(m) / static_cast<double>(k + 1);
        tail_min = std::min(tail_min, scaled);
        // the exact-arithmetic tail minimum is >= the raw value; the scaled
        // term can round one ulp below it, so clamp
        out.adjusted[order[k]] = std::max(raw[order[k]], tail_min);
    }
    return out;
}

std::vector<std::uint32_t> reject_at(const AdjustedPValues& adj, double alpha) {
    std::vector<std::uint32_t> hits;
    for (std::uint32_t i = 0; i < adj.adjusted.size(); ++i) {
        if (adj.adjusted[i] <= alpha) hits.push_back(i);
    }
    return hits;
}

}  // namespace damt
