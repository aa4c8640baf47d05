#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "damt/ate.hpp"
#include "damt/screening.hpp"
#include "damt/simulate.hpp"

namespace {

std::vector<std::uint32_t> all_rows(const damt::Dataset& d) {
    std::vector<std::uint32_t> rows(d.n_obs());
    for (std::uint32_t i = 0; i < rows.size(); ++i) rows[i] = i;
    return rows;
}

}  // namespace

TEST_SUITE("simulate") {

TEST_CASE("noiseless model is exact") {
    const auto sim = damt::generate({.p = 20, .n = 30, .n_true = 4, .effect_size = 1.0,
                                     .sigma_e = 0.0, .seed = 5});
    CHECK(sim.truth == std::vector<std::uint32_t>{0, 1, 2, 3});
    const auto effects = damt::fold_effect_sizes(sim.data, all_rows(sim.data));
    for (std::size_t j = 0; j < 20; ++j) {
        if (j < 4) {
            CHECK(effects[j] == doctest::Approx(1.0).epsilon(1e-12));
        } else {
            CHECK(effects[j] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
        }
        // each column is constant within arm: intercept (+ effect for treated)
        const auto col = sim.data.column(j);
        const auto a = sim.data.treatment();
        for (std::size_t i = 1; i < col.size(); ++i) {
            if (a[i] == a[0]) CHECK(col[i] == col[0]);
        }
    }
}

TEST_CASE("reproducibility is bit exact and seed sensitive") {
    const damt::SimDesign design{.p = 64, .n = 40, .n_true = 6, .effect_size = 0.8,
                                 .sigma_e = 0.4, .seed = 99};
    const auto a = damt::generate(design);
    const auto b = damt::generate(design);
    CHECK(a.data.fingerprint() == b.data.fingerprint());

    damt::SimDesign reseeded = design;
    reseeded.seed = 100;
    CHECK(a.data.fingerprint() != damt::generate(reseeded).data.fingerprint());
}

TEST_CASE("worker count does not change output") {
    const damt::SimDesign design{.p = 200, .n = 25, .n_true = 3, .effect_size = 1.0,
                                 .sigma_e = 0.3, .seed = 12};
    CHECK(damt::generate(design, 1).data.fingerprint() ==
          damt::generate(design, 8).data.fingerprint());
}

TEST_CASE("mean differences concentrate around the effect size") {
    // sampling-distribution band: the arm-mean difference has sd close to
    // 2*sigma/sqrt(n); a 4*sigma/sqrt(n) band holds for ~95% of draws
    const std::size_t n = 200;
    const double sigma = 0.1;
    const double band = 4.0 * sigma / std::sqrt(static_cast<double>(n));
    std::size_t inside = 0, total = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto sim = damt::generate({.p = 2000, .n = n, .n_true = 10, .effect_size = 1.0,
                                         .sigma_e = sigma, .seed = seed});
        const auto effects = damt::fold_effect_sizes(sim.data, all_rows(sim.data));
        for (std::size_t j = 0; j < 10; ++j) {
            ++total;
            if (std::abs(effects[j] - 1.0) <= band) ++inside;
        }
    }
    CHECK(total == 100);
    CHECK(inside >= 90);
}

TEST_CASE("true columns dominate the ranking at high signal") {
    int failures = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto sim = damt::generate({.p = 5000, .n = 100, .n_true = 10, .effect_size = 1.0,
                                         .sigma_e = 0.1, .seed = seed});
        const auto effects = damt::fold_effect_sizes(sim.data, all_rows(sim.data));
        const auto ranking = damt::rank_fold(effects, damt::Direction::absolute, 10);
        auto selected = ranking.selected;
        std::sort(selected.begin(), selected.end());
        if (selected != std::vector<std::uint32_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}) ++failures;
    }
    CHECK(failures <= 1);
}

TEST_CASE("global null p-values are calibrated") {
    const auto sim = damt::generate({.p = 10000, .n = 100, .n_true = 0, .effect_size = 1.0,
                                     .sigma_e = 0.1, .seed = 77});
    const auto rows = all_rows(sim.data);
    std::size_t below = 0;
    for (std::uint32_t j = 0; j < sim.data.n_outcomes(); ++j) {
        const auto fe = damt::fold_ate(sim.data, j, rows);
        const auto pe = damt::pool_effect(std::span(&fe, 1));
        if (pe.estimate.p_value < 0.05) ++below;
    }
    const double fraction = static_cast<double>(below) / 10000.0;
    CHECK(fraction >= 0.03);
    CHECK(fraction <= 0.07);
}

TEST_CASE("degenerate inputs are rejected") {
    CHECK_THROWS(damt::generate({.p = 0, .n = 10, .n_true = 0, .effect_size = 1.0,
                                 .sigma_e = 0.1, .seed = 1}));
    CHECK_THROWS(damt::generate({.p = 5, .n = 1, .n_true = 0, .effect_size = 1.0,
                                 .sigma_e = 0.1, .seed = 1}));
    CHECK_THROWS(damt::generate({.p = 5, .n = 10, .n_true = 6, .effect_size = 1.0,
                                 .sigma_e = 0.1, .seed = 1}));
    CHECK_THROWS(damt::generate({.p = 5, .n = 10, .n_true = 0, .effect_size = 1.0,
                                 .sigma_e = -0.1, .seed = 1}));
}

TEST_CASE("treatment vector always has both arms") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto sim = damt::generate({.p = 1, .n = 2, .n_true = 0, .effect_size = 1.0,
                                         .sigma_e = 0.1, .seed = seed});
        CHECK(sim.data.treated_rows().size() >= 1);
        CHECK(sim.data.control_rows().size() >= 1);
    }
}

}  // TEST_SUITE
