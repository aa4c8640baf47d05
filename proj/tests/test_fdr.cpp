#include <doctest.h>

#include <algorithm>
#include <limits>

#include "damt/fdr.hpp"
#include "damt/rng.hpp"
#include "test_oracles.hpp"

namespace {

// Raw p-values of the published down-regulated miRNA summary, row order.
const std::vector<double> kDownRaw{
    0.0197, 0.0003, 0.0034, 0.0294, 0.0019, 0.0312, 0.0271, 0.0657, 0.0169, 0.0008,
    0.0015, 0.0016, 0.0438, 0.0229, 0.0023, 0.0503, 0.0048, 0.0112, 0.0749, 0.2265,
    0.0674, 0.0054, 0.0245, 0.0309, 0.0247, 0.0391, 0.2706, 0.0340, 0.0796, 0.0524};

// Raw p-values of the published up-regulated summary, row order.
const std::vector<double> kUpRaw{
    0.001144, 0.001508, 0.000979, 0.000155, 0.011351, 0.001421, 0.035704, 0.012762,
    0.013911, 0.047842, 0.094063, 0.002409, 0.000199, 0.014352, 0.049561, 0.02849,
    0.005194, 0.119402, 0.018542, 0.001158, 0.091534, 0.212763, 0.113839, 0.021924,
    0.082371, 0.005503, 0.028817, 0.057202, 0.009065, 0.005102};

}  // namespace

TEST_SUITE("fdr") {

TEST_CASE("single p-value is its own adjustment") {
    const std::vector<double> raw{0.2706};
    const auto adj = damt::bh_adjust(raw);
    CHECK(adj.adjusted == std::vector<double>{0.2706});
}

TEST_CASE("uniform ladder collapses to the common bound") {
    const std::vector<double> raw{0.01, 0.02, 0.03, 0.04};
    const auto adj = damt::bh_adjust(raw);
    for (const auto v : adj.adjusted) CHECK(v == doctest::Approx(0.04).epsilon(1e-15));
}

TEST_CASE("down-regulated table spot checks") {
    const auto adj = damt::bh_adjust(kDownRaw);
    // raw 0.0008 is bound by the fifth order statistic: 0.0019 * 30 / 5
    CHECK(adj.adjusted[9] == doctest::Approx(0.0019 * 30.0 / 5.0).epsilon(1e-12));
    CHECK(adj.adjusted[9] == doctest::Approx(0.0114).epsilon(1e-10));
    // largest raw value maps to itself
    CHECK(adj.adjusted[26] == doctest::Approx(0.2706).epsilon(1e-15));
    // 19 of the 30 pass at 0.05
    CHECK(damt::reject_at(adj, 0.05).size() == 19);
}

TEST_CASE("up-regulated table rejection count") {
    const auto adj = damt::bh_adjust(kUpRaw);
    CHECK(damt::reject_at(adj, 0.05).size() == 20);
    // the smallest raw is bound by the second order statistic, 0.000199 * 30/2
    CHECK(adj.adjusted[3] == doctest::Approx(0.000199 * 30.0 / 2.0).epsilon(1e-12));
    // raw 0.035704 sits at rank 21 and maps to its own scaled value, just
    // above the 0.05 line (published as 0.051006 at print precision)
    CHECK(adj.adjusted[6] == doctest::Approx(0.035704 * 30.0 / 21.0).epsilon(1e-12));
    CHECK(std::abs(adj.adjusted[6] - 0.051006) <= 5e-7);
}

TEST_CASE("sorted adjusted values straddle the threshold at the published cut") {
    auto adjusted = damt::bh_adjust(kDownRaw).adjusted;
    std::sort(adjusted.begin(), adjusted.end());
    CHECK(adjusted[18] <= 0.05);  // 19th smallest
    CHECK(adjusted[19] > 0.05);   // 20th smallest
}

TEST_CASE("reject_at boundaries") {
    const auto adj = damt::bh_adjust(kDownRaw);
    const double min_adj = *std::min_element(adj.adjusted.begin(), adj.adjusted.end());
    CHECK(damt::reject_at(adj, min_adj * 0.999).empty());
    CHECK(damt::reject_at(adj, 1.0).size() == 30);

    // monotone in alpha
    const auto small = damt::reject_at(adj, 0.01);
    const auto large = damt::reject_at(adj, 0.10);
    CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
}

TEST_CASE("matches the brute-force definition exactly on random inputs") {
    damt::SplitMix64 g(808);
    for (int rep = 0; rep < 2000; ++rep) {
        const std::size_t m = 1 + g.bounded(10);
        std::vector<double> raw(m);
        for (auto& v : raw) {
            v = g.uniform01();
            if (g.bounded(8) == 0) v = 0.0;
            if (g.bounded(8) == 0) v = 1.0;
        }
        if (g.bounded(3) == 0 && m > 1) raw[g.bounded(m)] = raw[g.bounded(m)];  // ties
        const auto adj = damt::bh_adjust(raw);
        const auto expected = oracle::brute_bh(raw);
        for (std::size_t i = 0; i < m; ++i) {
            CHECK(adj.adjusted[i] == expected[i]);
        }
    }
}

TEST_CASE("adjusted >= raw, capped at 1, monotone along the sorted order") {
    damt::SplitMix64 g(909);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t m = 1 + g.bounded(40);
        std::vector<double> raw(m);
        for (auto& v : raw) v = g.uniform01();
        const auto adj = damt::bh_adjust(raw);

        std::vector<std::uint32_t> order(m);
        for (std::uint32_t i = 0; i < m; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](auto a, auto b) { return raw[a] < raw[b]; });
        for (std::size_t i = 0; i < m; ++i) {
            CHECK(adj.adjusted[i] >= raw[i]);
            CHECK(adj.adjusted[i] <= 1.0);
            if (i > 0) CHECK(adj.adjusted[order[i]] >= adj.adjusted[order[i - 1]]);
        }
    }
}

TEST_CASE("rejection count equals the classical step-up rule") {
    damt::SplitMix64 g(1010);
    for (int rep = 0; rep < 500; ++rep) {
        const std::size_t m = 1 + g.bounded(25);
        std::vector<double> raw(m);
        for (auto& v : raw) v = g.uniform01() * (g.bounded(2) ? 1.0 : 0.1);
        const auto adj = damt::bh_adjust(raw);
        for (const double q : {0.01, 0.05, 0.1, 0.25, 0.5}) {
            CHECK(damt::reject_at(adj, q).size() == oracle::stepup_rejection_count(raw, q));
        }
    }
}

TEST_CASE("permutation equivariance") {
    damt::SplitMix64 g(1111);
    const std::size_t m = 17;
    std::vector<double> raw(m);
    for (auto& v : raw) v = g.uniform01();
    const auto base = damt::bh_adjust(raw);

    std::vector<std::uint32_t> perm(m);
    for (std::uint32_t i = 0; i < m; ++i) perm[i] = i;
    g.shuffle(perm);
    std::vector<double> moved(m);
    for (std::size_t i = 0; i < m; ++i) moved[perm[i]] = raw[i];
    const auto shuffled = damt::bh_adjust(moved);
    for (std::size_t i = 0; i < m; ++i) {
        CHECK(shuffled.adjusted[perm[i]] == base.adjusted[i]);
    }
}

TEST_CASE("ties share one adjusted value") {
    const std::vector<double> raw{0.03, 0.01, 0.03, 0.2, 0.01};
    const auto adj = damt::bh_adjust(raw);
    CHECK(adj.adjusted[0] == adj.adjusted[2]);
    CHECK(adj.adjusted[1] == adj.adjusted[4]);
}

TEST_CASE("out-of-range inputs are rejected") {
    CHECK_THROWS_AS(damt::bh_adjust(std::vector<double>{}), damt::OutOfRangeP);
    CHECK_THROWS_AS(damt::bh_adjust(std::vector<double>{0.5, -0.1}), damt::OutOfRangeP);
    CHECK_THROWS_AS(damt::bh_adjust(std::vector<double>{1.5}), damt::OutOfRangeP);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(damt::bh_adjust(std::vector<double>{nan}), damt::OutOfRangeP);
}

}  // TEST_SUITE
