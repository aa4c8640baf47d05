#pragma once

// Deterministic seeded randomness for fold assignment and data generation.
//
// Generator: SplitMix64 (Steele, Lea & Flood 2014; java.util.SplittableRandom).
// The state advances by the 64-bit golden-ratio increment and each output is
// the finalizer mix of the new state, so a stream is fully determined by its
// initial state. Substreams are derived by mixing (seed, tag) and adding the
// substream index, which keeps column-parallel generation independent of the
// worker count.
//
// Derived draws:
//   uniform01  -> (0,1], ((x >> 11) + 1) * 2^-53
//   normal     -> Box-Muller on two uniforms, values consumed in pairs
//   bounded(n) -> unbiased integer in [0,n) by 128-bit multiply with rejection
//                 (Lemire 2019)
//   shuffle    -> Fisher-Yates, descending index, j = bounded(i + 1)
//
// All of the above are integer/IEEE-double exact and reproduce across
// platforms for a fixed build; only the libm calls inside normal() may differ
// in the last ulp between C library implementations.

#include <cmath>
#include <cstdint>
#include <vector>

namespace damt {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    std::uint64_t next() {
        state_ += kGolden;
        return mix64(state_);
    }

    // Uniform double in (0,1].
    double uniform01() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    // Unbiased integer in [0, n), n >= 1.
    std::uint64_t bounded(std::uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t t = (0 - n) % n;
            while (lo < t) {
                m = static_cast<unsigned __int128>(next()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(bounded(i));
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    std::uint64_t state_;
};

// Stream tags; indices select parallel substreams under one tag.
enum class StreamTag : std::uint64_t {
    treatment = 1,
    outcome_column = 2,
    fold_shuffle = 3,
};

inline SplitMix64 substream(std::uint64_t seed, StreamTag tag, std::uint64_t index = 0) {
    return SplitMix64(mix64(seed ^ (kGolden * static_cast<std::uint64_t>(tag))) + index);
}

// Standard normal draws, Box-Muller, consumed strictly in pairs.
class NormalStream {
  public:
    explicit NormalStream(SplitMix64 gen) : gen_(gen) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = gen_.uniform01();
        const double u2 = gen_.uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    SplitMix64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace damt
