#include <doctest.h>

#include "stakecast/errors.hpp"
#include "stakecast/ols.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <random>

using namespace stakecast;

namespace {

struct System {
    std::size_t rows;
    std::size_t cols;
    std::vector<double> x;
    std::vector<double> y;
};

System random_system(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> n01(0.0, 1.0);
    System s{rows, cols, std::vector<double>(rows * cols), std::vector<double>(rows)};
    for (auto& v : s.x) v = n01(rng);
    for (auto& v : s.y) v = n01(rng);
    return s;
}

template <typename F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::Io;
}

}  // namespace

TEST_CASE("exact linear data recovers intercept and slope") {
    const auto m = LagMatrix::from_dense(1, {0, 1, 2}, {1, 3, 5});
    const auto model = ols_fit(m, false, 0.0);
    CHECK(model.intercept == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(model.coefficients.size() == 1);
    CHECK(model.coefficients[0] == doctest::Approx(2.0).epsilon(1e-12));
    const std::vector<double> three = {3.0};
    CHECK(ols_predict(model, three) == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("constant targets give a constant model") {
    std::mt19937_64 rng(5);
    auto sys = random_system(rng, 20, 7);
    for (auto& v : sys.y) v = 0.05;
    const auto m = LagMatrix::from_dense(7, sys.x, sys.y);
    const auto oracle = testing::pinv_least_squares(sys.x, sys.y, 7);
    for (bool normalize : {false, true}) {
        const auto model = ols_fit(m, normalize, 1e-8);
        CHECK(model.intercept == doctest::Approx(0.05).epsilon(1e-9));
        CHECK(std::abs(oracle.intercept - 0.05) < 1e-12);
        for (std::size_t j = 0; j < 7; ++j) {
            CHECK(std::abs(model.coefficients[j]) < 1e-6);
            CHECK(std::abs(oracle.coefficients[j]) < 1e-12);
        }
    }
}

TEST_CASE("random 20x7 systems match the pseudo-inverse oracle") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        const auto sys = random_system(rng, 20, 7);
        const auto model = ols_fit(LagMatrix::from_dense(7, sys.x, sys.y), false, 0.0);
        const auto oracle = testing::pinv_least_squares(sys.x, sys.y, 7);
        CHECK(std::abs(model.intercept - oracle.intercept) < 1e-9);
        for (std::size_t j = 0; j < 7; ++j) CHECK(std::abs(model.coefficients[j] - oracle.coefficients[j]) < 1e-9);
    }
}

TEST_CASE("ridge solution matches the closed-form ridge oracle") {
    std::mt19937_64 rng(77);
    for (double eps : {1e-8, 1e-3, 0.5, 10.0}) {
        const auto sys = random_system(rng, 15, 5);
        const auto model = ols_fit(LagMatrix::from_dense(5, sys.x, sys.y), false, eps);
        const auto oracle = testing::ridge_closed_form(sys.x, sys.y, 5, eps);
        CHECK(model.intercept == doctest::Approx(oracle.intercept).epsilon(1e-9));
        for (std::size_t j = 0; j < 5; ++j) {
            CHECK(model.coefficients[j] == doctest::Approx(oracle.coefficients[j]).epsilon(1e-8));
        }
    }
}

TEST_CASE("normalized fit predicts like the raw fit") {
    std::mt19937_64 rng(8);
    auto sys = random_system(rng, 30, 4);
    for (std::size_t r = 0; r < sys.rows; ++r) {
        sys.x[r * 4 + 1] = 1000.0 + 50.0 * sys.x[r * 4 + 1];  // price-like scale
        sys.x[r * 4 + 2] = 0.01 * sys.x[r * 4 + 2];           // rate-like scale
    }
    const auto m = LagMatrix::from_dense(4, sys.x, sys.y);
    const auto raw = ols_fit(m, false, 0.0);
    const auto norm = ols_fit(m, true, 0.0);
    CHECK(norm.normalized);
    for (std::size_t r = 0; r < sys.rows; ++r) {
        CHECK(ols_predict(norm, m.row(r)) == doctest::Approx(ols_predict(raw, m.row(r))).epsilon(1e-9));
    }
}

TEST_CASE("constant columns get unit std and a zero coefficient") {
    std::mt19937_64 rng(12);
    auto sys = random_system(rng, 25, 3);
    for (std::size_t r = 0; r < sys.rows; ++r) sys.x[r * 3 + 1] = 42.0;
    const auto model = ols_fit(LagMatrix::from_dense(3, sys.x, sys.y), true, 1e-8);
    CHECK(model.feature_stds[1] == 1.0);
    CHECK(std::abs(model.coefficients[1]) < 1e-9);
    for (double sd : model.feature_stds) CHECK(sd > 0.0);
}

TEST_CASE("singular designs fail only without ridge") {
    // Duplicate columns.
    std::vector<double> x;
    std::vector<double> y;
    for (int r = 0; r < 10; ++r) {
        x.push_back(r);
        x.push_back(r);
        y.push_back(2.0 * r + 1.0);
    }
    const auto m = LagMatrix::from_dense(2, x, y);
    CHECK(code_of([&] { ols_fit(m, false, 0.0); }) == ErrorCode::DegenerateSystem);
    const auto model = ols_fit(m, false, 1e-8);
    CHECK(model.coefficients[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(model.coefficients[1] == doctest::Approx(1.0).epsilon(1e-6));

    // Fewer rows than parameters.
    const auto wide = LagMatrix::from_dense(3, {1, 2, 3}, {1});
    CHECK(code_of([&] { ols_fit(wide, false, 0.0); }) == ErrorCode::DegenerateSystem);
    CHECK_NOTHROW(ols_fit(wide, false, 1e-8));

    CHECK(code_of([] { ols_fit(LagMatrix::from_dense(1, {}, {}), false, 1e-8); }) == ErrorCode::DegenerateSystem);
    CHECK(code_of([&] { ols_fit(m, false, -1.0); }) == ErrorCode::InvalidSpec);
}

TEST_CASE("predict checks the feature width") {
    OlsModel model;
    model.intercept = 1.0;
    model.coefficients = {2.0};
    model.feature_means = {0.0};
    model.feature_stds = {1.0};
    const std::vector<double> three = {3.0};
    CHECK(ols_predict(model, three) == 7.0);
    const std::vector<double> two = {1.0, 2.0};
    CHECK(code_of([&] { (void)ols_predict(model, two); }) == ErrorCode::DimensionMismatch);

    OlsModel flat;
    flat.intercept = 0.05;
    flat.coefficients = {0.0, 0.0};
    flat.feature_means = {0.0, 0.0};
    flat.feature_stds = {1.0, 1.0};
    const std::vector<double> any = {123.0, -4.0};
    CHECK(ols_predict(flat, any) == 0.05);
}
