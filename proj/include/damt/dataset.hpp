#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "damt/errors.hpp"

namespace damt {

enum class Direction { up, down, absolute };

const char* to_string(Direction d);
Direction direction_from_string(const std::string& s);

// Immutable observations: an n x p outcome matrix stored column-major (one
// contiguous block per outcome variable), a binary treatment vector, and
// unique outcome names. Construct through validate_dataset().
class Dataset {
  public:
    std::size_t n_obs() const { return n_; }
    std::size_t n_outcomes() const { return p_; }

    std::span<const double> column(std::size_t j) const {
        return {values_.data() + j * n_, n_};
    }
    std::span<const std::uint8_t> treatment() const { return treatment_; }
    const std::vector<std::string>& outcome_names() const { return names_; }

    // Row indices per arm, ascending.
    std::span<const std::uint32_t> treated_rows() const { return treated_rows_; }
    std::span<const std::uint32_t> control_rows() const { return control_rows_; }

    // FNV-1a over dimensions, treatment, names and value bit patterns.
    std::uint64_t fingerprint() const;

    friend Dataset validate_dataset(std::vector<double> outcomes_col_major,
                                    std::vector<std::uint8_t> treatment,
                                    std::vector<std::string> outcome_names);

  private:
    Dataset() = default;
    std::size_t n_ = 0;
    std::size_t p_ = 0;
    std::vector<double> values_;  // column-major, n_ * p_
    std::vector<std::uint8_t> treatment_;
    std::vector<std::string> names_;
    std::vector<std::uint32_t> treated_rows_;
    std::vector<std::uint32_t> control_rows_;
};

// Validates and assembles a Dataset. `outcomes_col_major` holds column j at
// offset j*n. Throws DimensionMismatch, DegenerateTreatment, NonFiniteValue
// (with 0-based row/column), or DuplicateName. The inputs are moved, not
// copied.
Dataset validate_dataset(std::vector<double> outcomes_col_major,
                         std::vector<std::uint8_t> treatment,
                         std::vector<std::string> outcome_names);

// Convenience for row-major construction (tests, small inputs).
Dataset validate_dataset_rows(const std::vector<std::vector<double>>& rows,
                              std::vector<std::uint8_t> treatment,
                              std::vector<std::string> outcome_names);

struct AnalysisConfig {
    std::uint32_t folds = 10;
    std::uint32_t top = 30;  // reduced-set cardinality
    Direction direction = Direction::absolute;
    double alpha = 0.05;
    std::uint64_t seed = 0;

    // Throws on invalid field values or incompatibility with the dataset.
    void validate(const Dataset& data) const;
};

struct EffectEstimate {
    std::uint32_t outcome_index = 0;
    double ate = 0.0;
    double eic_variance = 0.0;
    double z_stat = 0.0;
    double p_value = 1.0;
};

struct ReportRow {
    std::string outcome_name;
    double ate = 0.0;
    double raw_p = 1.0;
    double adjusted_p = 1.0;
    double mean_cv_rank = 0.0;
    double pct_top = 0.0;
};

}  // namespace damt
