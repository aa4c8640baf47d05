#include "damt/simulate.hpp"

#include <numeric>

#include "damt/parallel.hpp"
#include "damt/rng.hpp"

namespace damt {

SimResult generate(const SimDesign& design, int workers) {
    if (design.p < 1 || design.n < 2) {
        throw Error("simulation needs p >= 1 and n >= 2");
    }
    if (design.n_true > design.p) {
        throw Error("n_true exceeds p");
    }
    if (design.sigma_e < 0.0) {
        throw Error("sigma_e must be nonnegative");
    }

    const std::size_t n = design.n;
    const std::size_t p = design.p;

    std::vector<std::uint8_t> treatment(n);
    bool ok = false;
    for (std::uint64_t attempt = 0; attempt < 64 && !ok; ++attempt) {
        auto gen = substream(design.seed, StreamTag::treatment, attempt);
        std::size_t ones = 0;
        for (std::size_t i = 0; i < n; ++i) {
            treatment[i] = static_cast<std::uint8_t>(gen.next() >> 63);
            ones += treatment[i];
        }
        ok = ones > 0 && ones < n;
    }
    if (!ok) throw DegenerateDraw("treatment vector single-armed after 64 redraws");

    std::vector<double> values(n * p);
    parallel_for(0, p, workers, [&](std::size_t j) {
        NormalStream g(substream(design.seed, StreamTag::outcome_column, j));
        const double intercept = g.next();
        const double effect = j < design.n_true ? design.effect_size : 0.0;
        double* col = values.data() + j * n;
        for (std::size_t i = 0; i < n; ++i) {
            col[i] = intercept + effect * treatment[i] + design.sigma_e * g.next();
        }
    });

    std::vector<std::string> names(p);
    for (std::size_t j = 0; j < p; ++j) names[j] = "Y" + std::to_string(j + 1);

    SimResult result{validate_dataset(std::move(values), std::move(treatment), std::move(names)),
                     {}};
    result.truth.resize(design.n_true);
    std::iota(result.truth.begin(), result.truth.end(), 0);
    return result;
}

}  // namespace damt
