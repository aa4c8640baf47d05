#include "damt/dataset.hpp"

#include <cmath>
#include <cstring>
#include <string_view>
#include <unordered_set>

namespace damt {

const char* to_string(Direction d) {
    switch (d) {
        case Direction::up: return "up";
        case Direction::down: return "down";
        case Direction::absolute: return "absolute";
    }
    return "absolute";
}

Direction direction_from_string(const std::string& s) {
    if (s == "up") return Direction::up;
    if (s == "down") return Direction::down;
    if (s == "absolute") return Direction::absolute;
    throw Error("unknown direction: " + s + " (expected up, down or absolute)");
}

Dataset validate_dataset(std::vector<double> outcomes_col_major,
                         std::vector<std::uint8_t> treatment,
                         std::vector<std::string> outcome_names) {
    const std::size_t n = treatment.size();
    const std::size_t p = outcome_names.size();
    if (n < 2) {
        throw DimensionMismatch("need at least 2 observations, got " + std::to_string(n));
    }
    if (p == 0) {
        throw DimensionMismatch("need at least 1 outcome column");
    }
    if (outcomes_col_major.size() != n * p) {
        throw DimensionMismatch("outcome matrix has " + std::to_string(outcomes_col_major.size()) +
                                " values, expected n*p = " + std::to_string(n * p));
    }

    Dataset d;
    d.n_ = n;
    d.p_ = p;

    for (std::size_t i = 0; i < n; ++i) {
        if (treatment[i] > 1) {
            throw Error("treatment value at row " + std::to_string(i) + " is not 0/1");
        }
        if (treatment[i] == 1) {
            d.treated_rows_.push_back(static_cast<std::uint32_t>(i));
        } else {
            d.control_rows_.push_back(static_cast<std::uint32_t>(i));
        }
    }
    if (d.treated_rows_.empty() || d.control_rows_.empty()) {
        throw DegenerateTreatment("treatment vector contains a single arm");
    }

    for (std::size_t j = 0; j < p; ++j) {
        const double* col = outcomes_col_major.data() + j * n;
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(col[i])) throw NonFiniteValue(i, j);
        }
    }

    std::unordered_set<std::string_view> seen;
    seen.reserve(p * 2);
    for (const auto& name : outcome_names) {
        if (!seen.insert(name).second) throw DuplicateName(name);
    }

    d.values_ = std::move(outcomes_col_major);
    d.treatment_ = std::move(treatment);
    d.names_ = std::move(outcome_names);
    return d;
}

Dataset validate_dataset_rows(const std::vector<std::vector<double>>& rows,
                              std::vector<std::uint8_t> treatment,
                              std::vector<std::string> outcome_names) {
    const std::size_t n = rows.size();
    const std::size_t p = outcome_names.size();
    std::vector<double> cols(n * p, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != p) {
            throw DimensionMismatch("row " + std::to_string(i) + " has " +
                                    std::to_string(rows[i].size()) + " values, expected " +
                                    std::to_string(p));
        }
        for (std::size_t j = 0; j < p; ++j) cols[j * n + i] = rows[i][j];
    }
    return validate_dataset(std::move(cols), std::move(treatment), std::move(outcome_names));
}

namespace {

struct Fnv1a {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    void add_bytes(const void* data, std::size_t len) {
        const auto* b = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= b[i];
            h *= 0x100000001B3ULL;
        }
    }
    void add_u64(std::uint64_t v) { add_bytes(&v, sizeof v); }
};

}  // namespace

std::uint64_t Dataset::fingerprint() const {
    Fnv1a f;
    f.add_u64(n_);
    f.add_u64(p_);
    f.add_bytes(treatment_.data(), treatment_.size());
    for (const auto& name : names_) {
        f.add_u64(name.size());
        f.add_bytes(name.data(), name.size());
    }
    for (double v : values_) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        f.add_u64(bits);
    }
    return f.h;
}

void AnalysisConfig::validate(const Dataset& data) const {
    if (folds < 2) throw Error("fold count must be at least 2");
    const std::size_t min_arm =
        std::min(data.treated_rows().size(), data.control_rows().size());
    if (folds > min_arm) {
        throw TooManyFolds("fold count " + std::to_string(folds) +
                           " exceeds the smaller arm size " + std::to_string(min_arm));
    }
    if (top < 1 || top > data.n_outcomes()) {
        throw Error("reduced-set size must be in [1, p], got " + std::to_string(top));
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error("alpha must be in (0,1)");
    }
}

}  // namespace damt
