#include <doctest.h>

#include <cmath>
#include <limits>

#include "damt/dataset.hpp"

using damt::validate_dataset_rows;

TEST_SUITE("dataset") {

TEST_CASE("minimal well-formed input") {
    const auto d = validate_dataset_rows({{1.0, 10.0}, {2.0, 20.0}, {3.0, 30.0}, {4.0, 40.0}},
                                         {1, 1, 0, 0}, {"g1", "g2"});
    CHECK(d.n_obs() == 4);
    CHECK(d.n_outcomes() == 2);
    CHECK(d.column(1)[2] == 30.0);
    CHECK(d.treated_rows().size() == 2);
    CHECK(d.control_rows().size() == 2);
    CHECK(d.treated_rows()[0] == 0);
    CHECK(d.control_rows()[1] == 3);
}

TEST_CASE("single-arm treatment is rejected") {
    CHECK_THROWS_AS(validate_dataset_rows({{1.0}, {2.0}}, {1, 1}, {"g1"}),
                    damt::DegenerateTreatment);
    CHECK_THROWS_AS(validate_dataset_rows({{1.0}, {2.0}}, {0, 0}, {"g1"}),
                    damt::DegenerateTreatment);
}

TEST_CASE("non-finite value reports its position") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    try {
        validate_dataset_rows({{1, 1}, {2, 2}, {3, nan}, {4, 4}}, {1, 1, 0, 0}, {"g1", "g2"});
        FAIL("expected NonFiniteValue");
    } catch (const damt::NonFiniteValue& e) {
        CHECK(e.row == 2);
        CHECK(e.col == 1);
    }
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(validate_dataset_rows({{inf}, {1}}, {1, 0}, {"g1"}), damt::NonFiniteValue);
}

TEST_CASE("dimension mismatch") {
    CHECK_THROWS_AS(validate_dataset_rows({{1, 2}, {3}}, {1, 0}, {"a", "b"}),
                    damt::DimensionMismatch);
    CHECK_THROWS_AS(damt::validate_dataset({1, 2, 3}, {1, 0}, {"a", "b"}),
                    damt::DimensionMismatch);
    CHECK_THROWS_AS(validate_dataset_rows({{1}}, {1}, {"a"}), damt::DimensionMismatch);
}

TEST_CASE("duplicate names") {
    try {
        validate_dataset_rows({{1, 2}, {3, 4}}, {1, 0}, {"a", "a"});
        FAIL("expected DuplicateName");
    } catch (const damt::DuplicateName& e) {
        CHECK(e.name == "a");
    }
}

TEST_CASE("fingerprint changes with any field") {
    const auto base = validate_dataset_rows({{1, 2}, {3, 4}}, {1, 0}, {"a", "b"});
    const auto other_value = validate_dataset_rows({{1, 2}, {3, 5}}, {1, 0}, {"a", "b"});
    const auto other_name = validate_dataset_rows({{1, 2}, {3, 4}}, {1, 0}, {"a", "c"});
    const auto other_arm = validate_dataset_rows({{1, 2}, {3, 4}}, {0, 1}, {"a", "b"});
    CHECK(base.fingerprint() == validate_dataset_rows({{1, 2}, {3, 4}}, {1, 0}, {"a", "b"}).fingerprint());
    CHECK(base.fingerprint() != other_value.fingerprint());
    CHECK(base.fingerprint() != other_name.fingerprint());
    CHECK(base.fingerprint() != other_arm.fingerprint());
}

TEST_CASE("config validation") {
    const auto d = validate_dataset_rows({{1.0}, {2.0}, {3.0}, {4.0}, {5.0}, {6.0}},
                                         {1, 1, 1, 0, 0, 0}, {"g1"});
    damt::AnalysisConfig cfg;
    cfg.folds = 3;
    cfg.top = 1;
    cfg.validate(d);

    cfg.folds = 4;  // exceeds arm size 3
    CHECK_THROWS_AS(cfg.validate(d), damt::TooManyFolds);

    cfg.folds = 2;
    cfg.top = 2;  // exceeds p
    CHECK_THROWS(cfg.validate(d));

    cfg.top = 1;
    cfg.alpha = 1.5;
    CHECK_THROWS(cfg.validate(d));
}

}  // TEST_SUITE
