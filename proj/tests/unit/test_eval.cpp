#include <doctest.h>

#include "stakecast/errors.hpp"
#include "stakecast/eval.hpp"
#include "stakecast/synth.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <random>

using namespace stakecast;

namespace {

const Date kStart = Date{std::chrono::year{2021} / 6 / 23};

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

FeatureFrame synth_frame(SynthKind kind, int length, double level, std::uint64_t seed, double slope = 0.0,
                         double sigma = 0.0, double phi = 0.0) {
    SynthSpec s;
    s.kind = kind;
    s.length = length;
    s.level = level;
    s.slope = slope;
    s.sigma = sigma;
    s.phi = phi;
    s.seed = seed;
    return FeatureFrame(generate(s));
}

ForecastSpec spec_for(Method m, int horizon = 1) {
    ForecastSpec s;
    s.method = m;
    s.horizon = horizon;
    return s;
}

}  // namespace

TEST_CASE("make_splits enumerates full windows") {
    const auto plan = make_splits(150, 90, 30, 30);
    REQUIRE(plan.folds.size() == 2);
    CHECK(plan.folds[0] == Fold{0, 0, 90, 90, 120});
    CHECK(plan.folds[1] == Fold{1, 30, 120, 120, 150});

    const auto single = make_splits(120, 90, 30);
    REQUIRE(single.folds.size() == 1);
    CHECK(single.folds[0] == Fold{0, 0, 90, 90, 120});
    CHECK(single.stride == 30);

    CHECK(code_of([] { make_splits(119, 90, 30); }) == ErrorCode::NoFolds);
    CHECK(code_of([] { make_splits(200, 0, 30); }) == ErrorCode::InvalidSpec);
}

TEST_CASE("make_splits invariants hold for random settings") {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t train = 1 + rng() % 50;
        const std::size_t test = 1 + rng() % 20;
        const std::size_t stride = 1 + rng() % 25;
        const std::size_t len = train + test + rng() % 200;
        const auto plan = make_splits(len, train, test, stride);
        for (std::size_t k = 0; k < plan.folds.size(); ++k) {
            const auto& f = plan.folds[k];
            CHECK(f.train_end == f.test_begin);
            CHECK(f.train_end - f.train_begin == train);
            CHECK(f.test_end - f.test_begin == test);
            CHECK(f.test_end <= len);
            CHECK(f.train_begin == k * stride);
        }
        // No further fold would fit.
        CHECK(plan.folds.size() * stride + train + test > len);
    }
}

TEST_CASE("rmse_over_mean examples") {
    CHECK(rmse_over_mean(std::vector<double>{2, 2}, std::vector<double>{1, 3}) == 0.5);
    CHECK(rmse_over_mean(std::vector<double>{1, 2, 3}, std::vector<double>{2, 3, 4}) == 0.5);
    const std::vector<double> a = {0.3, 0.1, 0.7};
    CHECK(rmse_over_mean(a, a) == 0.0);
    CHECK(code_of([] { (void)rmse_over_mean(std::vector<double>{1, -1}, std::vector<double>{0, 0}); }) ==
          ErrorCode::ZeroMean);
    CHECK(code_of([] { (void)rmse_over_mean(std::vector<double>{1}, std::vector<double>{0, 0}); }) ==
          ErrorCode::LengthMismatch);
    CHECK(code_of([] { (void)rmse_over_mean(std::vector<double>{}, std::vector<double>{}); }) ==
          ErrorCode::LengthMismatch);
}

TEST_CASE("metric is zero only for exact predictions") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a(1 + rng() % 20);
        for (auto& x : a) x = u(rng);
        std::vector<double> p = a;
        CHECK(rmse_over_mean(a, p) == 0.0);
        p[rng() % p.size()] += 1e-6;
        CHECK(rmse_over_mean(a, p) > 0.0);
    }
}

TEST_CASE("constant frame backtests exactly for every method") {
    const auto rewards = synth_frame(SynthKind::Constant, 150, 0.05, 0).rewards();
    const FeatureFrame frame(rewards, DailySeries(rewards.start(), std::vector<double>(150, 1800.0)),
                             DailySeries(rewards.start(), std::vector<double>(150, 55.0)));
    const auto plan = make_splits(frame.size(), 90, 30);
    for (Method m : {Method::Mwa, Method::Slr, Method::Mlr}) {
        const auto cell = backtest(frame, spec_for(m), plan);
        CHECK(cell.ok());
        CHECK(*cell.rmse_over_mean < 1e-9);
        CHECK(cell.n_points == 60);
    }
}

TEST_CASE("SLR backtest on a noiseless trend is exact") {
    const auto frame = synth_frame(SynthKind::LinearTrend, 150, 1.0, 0, 0.01);
    const auto plan = make_splits(frame.size(), 90, 30);
    const auto cell = backtest(frame, spec_for(Method::Slr), plan);
    CHECK(*cell.rmse_over_mean < 1e-6);
    // Cross-check every prediction against the closed-form continuation.
    for (const auto& tp : cell.trace()) {
        const double t = static_cast<double>(days_between(frame.start(), tp.date));
        CHECK(std::abs(tp.predicted - (1.0 + 0.01 * t)) < 1e-6);
    }
}

TEST_CASE("MWA backtest on iid noise follows the noise law") {
    const auto frame = synth_frame(SynthKind::Ar1, 5000, 1.0, 5, 0.0, 0.05, 0.0);
    const auto plan = make_splits(frame.size(), 90, 30);
    const auto cell = backtest(frame, spec_for(Method::Mwa), plan);
    CHECK(std::abs(*cell.rmse_over_mean - 0.0534) <= 0.004);
}

TEST_CASE("trace covers every test day and pooling is consistent") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        const auto frame = synth_frame(SynthKind::SineNoise, 150 + static_cast<int>(rng() % 200), 1.0, rng(), 0.0, 0.02);
        const auto plan = make_splits(frame.size(), 90, 30);
        for (Method m : {Method::Mwa, Method::Slr}) {
            const auto cell = backtest(frame, spec_for(m, 1 + static_cast<int>(rng() % 7)), plan);
            REQUIRE(cell.folds.size() == plan.folds.size());
            const auto trace = cell.trace();
            CHECK(trace.size() == plan.folds.size() * 30);
            CHECK(cell.n_points == trace.size());
            for (std::size_t i = 0; i < trace.size(); ++i) {
                const auto& f = plan.folds[i / 30];
                CHECK(trace[i].date == frame.date_at(f.test_begin + i % 30));
            }
            double weighted = 0.0;
            std::size_t count = 0;
            for (const auto& f : cell.folds) {
                weighted += f.rmse * f.rmse * static_cast<double>(f.count);
                count += f.count;
            }
            CHECK(count == cell.n_points);
            CHECK(cell.rmse * cell.rmse * static_cast<double>(cell.n_points) ==
                  doctest::Approx(weighted).epsilon(1e-12));
            CHECK(*cell.rmse_over_mean == doctest::Approx(cell.rmse / cell.mean_actual).epsilon(1e-15));
        }
    }
}

TEST_CASE("backtest is deterministic and scale invariant") {
    const auto frame = synth_frame(SynthKind::Ar1, 400, 0.06, 99, 0.0, 0.002, 0.9);
    const auto plan = make_splits(frame.size(), 90, 30);
    for (Method m : {Method::Mwa, Method::Slr}) {
        const auto a = backtest(frame, spec_for(m, 3), plan);
        CHECK(a == backtest(frame, spec_for(m, 3), plan));
        for (double c : {0.01, 100.0}) {
            std::vector<double> scaled(frame.rewards().values().begin(), frame.rewards().values().end());
            for (auto& v : scaled) v *= c;
            const auto b = backtest(FeatureFrame(DailySeries(frame.start(), scaled)), spec_for(m, 3), plan);
            CHECK(std::abs(*b.rmse_over_mean - *a.rmse_over_mean) <= 1e-9 * *a.rmse_over_mean);
        }
    }
}

TEST_CASE("fold results ignore data after the fold") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 10; ++trial) {
        const auto frame = synth_frame(SynthKind::Ar1, 240, 1.0, rng(), 0.0, 0.05, 0.8);
        const auto plan = make_splits(frame.size(), 90, 30);
        for (const auto& fold : plan.folds) {
            std::vector<double> v(frame.rewards().values().begin(), frame.rewards().values().end());
            for (std::size_t i = fold.test_end; i < v.size(); ++i) v[i] = 1e9;
            const FeatureFrame poked(DailySeries(frame.start(), v));
            for (Method m : {Method::Mwa, Method::Slr}) {
                CHECK(backtest_fold(frame, spec_for(m, 4), fold) == backtest_fold(poked, spec_for(m, 4), fold));
            }
        }
    }
}

TEST_CASE("horizon sweep fills the matrix and flags minima") {
    const auto frame = synth_frame(SynthKind::Constant, 150, 0.05, 0);
    const std::vector<Method> methods = {Method::Mwa, Method::Slr};
    const auto report = horizon_sweep(frame, methods, 7, SplitSettings{});
    REQUIRE(report.cells.size() == 14);
    for (const auto& c : report.cells) {
        CHECK(c.ok());
        CHECK(*c.rmse_over_mean < 1e-9);
        CHECK(c.rmse_over_series_mean.has_value());
    }
    CHECK(report.find(Method::Slr, 7) != nullptr);
    CHECK(report.find(Method::Mlr, 1) == nullptr);
}

TEST_CASE("sweep records per-cell failures") {
    const auto frame = synth_frame(SynthKind::Constant, 119, 0.05, 0);
    const std::vector<Method> methods = {Method::Mwa, Method::Slr, Method::Mlr};
    const auto report = horizon_sweep(frame, methods, 7, SplitSettings{});
    REQUIRE(report.cells.size() == 21);
    for (const auto& c : report.cells) {
        CHECK_FALSE(c.ok());
        REQUIRE(c.error.has_value());
        CHECK(c.error->code == ErrorCode::NoFolds);
        CHECK_FALSE(c.best);
    }

    const auto ok_frame = synth_frame(SynthKind::Constant, 150, 0.05, 0);
    const auto mixed = horizon_sweep(ok_frame, methods, 2, SplitSettings{});
    CHECK(mixed.find(Method::Mwa, 1)->ok());
    CHECK(mixed.find(Method::Mlr, 1)->error->code == ErrorCode::MissingFeature);
}

TEST_CASE("sweep on AR(1) drift degrades with horizon") {
    const auto frame = synth_frame(SynthKind::Ar1, 2000, 1.0, 2024, 0.0, 0.01, 0.95);
    const std::vector<Method> methods = {Method::Mwa};
    const auto report = horizon_sweep(frame, methods, 7, SplitSettings{});
    CHECK(*report.find(Method::Mwa, 7)->rmse_over_mean > *report.find(Method::Mwa, 1)->rmse_over_mean);
}
