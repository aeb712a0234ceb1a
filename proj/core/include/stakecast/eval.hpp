#pragma once

#include "stakecast/errors.hpp"
#include "stakecast/forecast.hpp"
#include "stakecast/series.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stakecast {

/// One walk-forward fold. Ranges are half-open frame positions and the test
/// range starts where the train range ends.
struct Fold {
    std::size_t id = 0;
    std::size_t train_begin = 0;
    std::size_t train_end = 0;
    std::size_t test_begin = 0;
    std::size_t test_end = 0;

    friend bool operator==(const Fold&, const Fold&) = default;
};

struct SplitSettings {
    std::size_t train_len = 90;
    std::size_t test_len = 30;
    /// Unset means stride = test_len (consecutive, non-overlapping test blocks).
    std::optional<std::size_t> stride;

    [[nodiscard]] std::size_t effective_stride() const noexcept { return stride.value_or(test_len); }
};

struct SplitPlan {
    std::size_t train_len = 90;
    std::size_t test_len = 30;
    std::size_t stride = 30;
    std::vector<Fold> folds;
};

/// Enumerates fold k = 0, 1, ... with train [k*stride, k*stride + train_len)
/// and test [k*stride + train_len, k*stride + train_len + test_len) while the
/// test range fits in the series.
///
/// Throws InvalidSpec for zero lengths or stride, NoFolds when
/// series_len < train_len + test_len.
SplitPlan make_splits(std::size_t series_len, std::size_t train_len = 90, std::size_t test_len = 30,
                      std::optional<std::size_t> stride = std::nullopt);
SplitPlan make_splits(std::size_t series_len, const SplitSettings& settings);

/// Root-mean-square error.
/// Throws LengthMismatch for unequal or empty inputs.
double rmse(std::span<const double> actual, std::span<const double> predicted);

/// sqrt(sum (a_i - p_i)^2 / N) / (sum a_i / N).
/// Throws LengthMismatch for unequal or empty inputs, ZeroMean when the
/// actuals average to zero.
double rmse_over_mean(std::span<const double> actual, std::span<const double> predicted);

/// A single (target date, actual, predicted) comparison.
struct TracePoint {
    Date date;
    std::size_t fold = 0;
    double actual = 0.0;
    double predicted = 0.0;

    friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct FoldResult {
    std::size_t fold = 0;
    double rmse = 0.0;
    double mean_actual = 0.0;
    std::size_t count = 0;
    std::vector<TracePoint> trace;

    friend bool operator==(const FoldResult&, const FoldResult&) = default;
};

struct CellError {
    ErrorCode code;
    std::string detail;

    friend bool operator==(const CellError&, const CellError&) = default;
};

/// Result for one (method, horizon) pair.
struct CellReport {
    Method method = Method::Mwa;
    int horizon = 1;

    /// Pooled RMSE over every test point divided by the mean of the pooled
    /// actuals. Unset when the cell failed.
    std::optional<double> rmse_over_mean;
    double rmse = 0.0;
    double mean_actual = 0.0;
    /// Alternative denominator: mean of the whole rewards series.
    double series_mean = 0.0;
    std::optional<double> rmse_over_series_mean;
    std::size_t n_points = 0;

    std::vector<FoldResult> folds;
    std::optional<CellError> error;
    /// Attains the smallest rmse_over_mean among methods at this horizon.
    bool best = false;

    [[nodiscard]] bool ok() const noexcept { return rmse_over_mean.has_value(); }
    /// Every fold's trace concatenated in fold order.
    [[nodiscard]] std::vector<TracePoint> trace() const;

    friend bool operator==(const CellReport&, const CellReport&) = default;
};

struct EvalReport {
    std::vector<Method> methods;
    std::vector<int> horizons;
    /// Ordered by (horizon, method) in the order of `horizons` and `methods`.
    std::vector<CellReport> cells;

    [[nodiscard]] const CellReport* find(Method method, int horizon) const noexcept;

    friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

/// Fits on the fold's train range and predicts every test day. The forecast
/// origin for test day d is d - horizon; it may fall inside the train range,
/// in which case the lag window comes from the train tail. Only positions in
/// [fold.train_begin, origin] are read.
FoldResult backtest_fold(const FeatureFrame& frame, const ForecastSpec& spec, const Fold& fold);

/// Walk-forward backtest of one method at spec.horizon over every fold of
/// `plan`. Errors propagate.
CellReport backtest(const FeatureFrame& frame, const ForecastSpec& spec, const SplitPlan& plan);

/// Backtests every method at horizons 1..max_horizon. `base` supplies window,
/// lags, normalization and ridge settings; method and horizon are overridden
/// per cell. A failing cell records its error instead of aborting the sweep.
/// Cells run concurrently; the result does not depend on scheduling.
EvalReport horizon_sweep(const FeatureFrame& frame, std::span<const Method> methods, int max_horizon,
                         const SplitSettings& settings, const ForecastSpec& base = {});

}  // namespace stakecast
