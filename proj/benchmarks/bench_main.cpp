#include "stakecast/eval.hpp"
#include "stakecast/lag_matrix.hpp"
#include "stakecast/ols.hpp"
#include "stakecast/synth.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace stakecast;

namespace {

FeatureFrame three_feeds(std::size_t days) {
    SynthSpec s;
    s.kind = SynthKind::Ar1;
    s.length = days;
    s.phi = 0.9;
    s.level = 0.05;
    s.sigma = 0.003;
    s.seed = 1;
    auto rewards = generate(s);
    s.level = 20.0;
    s.sigma = 0.4;
    s.seed = 2;
    auto price = generate(s);
    s.kind = SynthKind::SineNoise;
    s.level = 50.0;
    s.amplitude = 10.0;
    s.sigma = 2.0;
    s.seed = 3;
    return FeatureFrame(std::move(rewards), std::move(price), generate(s));
}

void BM_OlsFit(benchmark::State& state) {
    const auto rows = static_cast<std::size_t>(state.range(0));
    const auto cols = static_cast<std::size_t>(state.range(1));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(rows * cols);
    std::vector<double> y(rows);
    for (auto& v : x) v = u(rng);
    for (auto& v : y) v = u(rng);
    const auto matrix = LagMatrix::from_dense(cols, x, y);
    for (auto _ : state) benchmark::DoNotOptimize(ols_fit(matrix, true));
}
BENCHMARK(BM_OlsFit)->Args({83, 7})->Args({83, 21})->Args({500, 21});

void BM_LagMatrix(benchmark::State& state) {
    const auto frame = three_feeds(90);
    const std::vector<Feature> features = {Feature::Rewards, Feature::Price, Feature::Trends};
    for (auto _ : state) benchmark::DoNotOptimize(build_lag_matrix(frame, features, 7, 1));
}
BENCHMARK(BM_LagMatrix);

void BM_Backtest(benchmark::State& state) {
    const auto frame = three_feeds(static_cast<std::size_t>(state.range(0)));
    ForecastSpec spec;
    spec.method = static_cast<Method>(state.range(1));
    const auto plan = make_splits(frame.size());
    for (auto _ : state) benchmark::DoNotOptimize(backtest(frame, spec, plan));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(plan.folds.size() * plan.test_len));
}
BENCHMARK(BM_Backtest)->Args({365, 0})->Args({365, 1})->Args({365, 2})->Args({2000, 2});

void BM_HorizonSweep(benchmark::State& state) {
    const auto frame = three_feeds(static_cast<std::size_t>(state.range(0)));
    const std::vector<Method> methods = {Method::Mwa, Method::Slr, Method::Mlr};
    for (auto _ : state) benchmark::DoNotOptimize(horizon_sweep(frame, methods, 7, SplitSettings{}));
}
BENCHMARK(BM_HorizonSweep)->Arg(365)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
