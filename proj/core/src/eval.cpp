#include "stakecast/eval.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

namespace stakecast {

SplitPlan make_splits(std::size_t series_len, std::size_t train_len, std::size_t test_len,
                      std::optional<std::size_t> stride) {
    const std::size_t step = stride.value_or(test_len);
    if (series_len < 1 || train_len < 1 || test_len < 1 || step < 1) {
        throw Error(ErrorCode::InvalidSpec, "series length, train, test and stride must be at least 1");
    }
    if (series_len < train_len + test_len) {
        throw Error(ErrorCode::NoFolds, "series of " + std::to_string(series_len) + " days is shorter than " +
                                            std::to_string(train_len) + " train + " + std::to_string(test_len) +
                                            " test");
    }
    SplitPlan plan{train_len, test_len, step, {}};
    for (std::size_t start = 0; start + train_len + test_len <= series_len; start += step) {
        plan.folds.push_back({plan.folds.size(), start, start + train_len, start + train_len,
                              start + train_len + test_len});
    }
    return plan;
}

SplitPlan make_splits(std::size_t series_len, const SplitSettings& settings) {
    return make_splits(series_len, settings.train_len, settings.test_len, settings.stride);
}

namespace {

void check_lengths(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.size() != predicted.size() || actual.empty()) {
        throw Error(ErrorCode::LengthMismatch, std::to_string(actual.size()) + " actual vs " +
                                                   std::to_string(predicted.size()) + " predicted values");
    }
}

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

double rmse(std::span<const double> actual, std::span<const double> predicted) {
    check_lengths(actual, predicted);
    double ss = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double e = actual[i] - predicted[i];
        ss += e * e;
    }
    return std::sqrt(ss / static_cast<double>(actual.size()));
}

double rmse_over_mean(std::span<const double> actual, std::span<const double> predicted) {
    check_lengths(actual, predicted);
    const double mean = mean_of(actual);
    if (mean == 0.0) throw Error(ErrorCode::ZeroMean, "mean of actual values is zero");
    return rmse(actual, predicted) / mean;
}

std::vector<TracePoint> CellReport::trace() const {
    std::vector<TracePoint> all;
    for (const auto& f : folds) all.insert(all.end(), f.trace.begin(), f.trace.end());
    return all;
}

const CellReport* EvalReport::find(Method method, int horizon) const noexcept {
    for (const auto& c : cells) {
        if (c.method == method && c.horizon == horizon) return &c;
    }
    return nullptr;
}

FoldResult backtest_fold(const FeatureFrame& frame, const ForecastSpec& spec, const Fold& fold) {
    spec.validate();
    if (fold.train_begin >= fold.train_end || fold.train_end != fold.test_begin || fold.test_begin >= fold.test_end ||
        fold.test_end > frame.size()) {
        throw Error(ErrorCode::InvalidSpec, "fold " + std::to_string(fold.id) + " does not fit the frame");
    }
    const Forecaster forecaster = fit_direct(frame.slice(fold.train_begin, fold.train_end), spec);
    const auto n = static_cast<std::size_t>(spec.horizon);
    const auto rewards = frame.rewards().values();

    FoldResult result;
    result.fold = fold.id;
    std::vector<double> actual;
    std::vector<double> predicted;
    for (std::size_t target = fold.test_begin; target < fold.test_end; ++target) {
        if (target < fold.train_begin + n) {
            throw Error(ErrorCode::InsufficientHistory, "horizon exceeds fold history");
        }
        const std::size_t origin = target - n;
        // The visible frame ends at the origin; nothing later can leak in.
        const FeatureFrame visible = frame.slice(fold.train_begin, origin + 1);
        const double p = forecaster.predict_at(visible, origin - fold.train_begin);
        actual.push_back(rewards[target]);
        predicted.push_back(p);
        result.trace.push_back({frame.date_at(target), fold.id, rewards[target], p});
    }
    result.count = actual.size();
    result.rmse = rmse(actual, predicted);
    result.mean_actual = mean_of(actual);
    return result;
}

CellReport backtest(const FeatureFrame& frame, const ForecastSpec& spec, const SplitPlan& plan) {
    spec.validate();
    if (plan.folds.empty()) throw Error(ErrorCode::NoFolds, "split plan has no folds");

    CellReport cell;
    cell.method = spec.method;
    cell.horizon = spec.horizon;
    std::vector<double> actual;
    std::vector<double> predicted;
    for (const auto& fold : plan.folds) {
        cell.folds.push_back(backtest_fold(frame, spec, fold));
        for (const auto& tp : cell.folds.back().trace) {
            actual.push_back(tp.actual);
            predicted.push_back(tp.predicted);
        }
    }
    cell.n_points = actual.size();
    cell.rmse = rmse(actual, predicted);
    cell.mean_actual = mean_of(actual);
    cell.rmse_over_mean = rmse_over_mean(actual, predicted);
    cell.series_mean = mean_of(frame.rewards().values());
    if (cell.series_mean != 0.0) cell.rmse_over_series_mean = cell.rmse / cell.series_mean;
    return cell;
}

EvalReport horizon_sweep(const FeatureFrame& frame, std::span<const Method> methods, int max_horizon,
                         const SplitSettings& settings, const ForecastSpec& base) {
    if (max_horizon < 1) throw Error(ErrorCode::InvalidSpec, "max horizon must be at least 1");

    EvalReport report;
    report.methods.assign(methods.begin(), methods.end());
    for (int h = 1; h <= max_horizon; ++h) report.horizons.push_back(h);

    std::optional<SplitPlan> plan;
    std::optional<CellError> plan_error;
    try {
        plan = make_splits(frame.size(), settings);
    } catch (const Error& e) {
        plan_error = CellError{e.code(), e.detail()};
    }

    auto run_cell = [&](Method method, int horizon) {
        CellReport cell;
        cell.method = method;
        cell.horizon = horizon;
        if (plan_error) {
            cell.error = plan_error;
            return cell;
        }
        ForecastSpec spec = base;
        spec.method = method;
        spec.horizon = horizon;
        try {
            cell = backtest(frame, spec, *plan);
        } catch (const Error& e) {
            cell.error = CellError{e.code(), e.detail()};
        }
        return cell;
    };

    std::vector<std::future<CellReport>> pending;
    for (int h : report.horizons) {
        for (Method m : report.methods) pending.push_back(std::async(std::launch::async, run_cell, m, h));
    }
    for (auto& f : pending) report.cells.push_back(f.get());

    for (int h : report.horizons) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c : report.cells) {
            if (c.horizon == h && c.ok()) best = std::min(best, *c.rmse_over_mean);
        }
        for (auto& c : report.cells) {
            if (c.horizon == h && c.ok() && *c.rmse_over_mean == best) c.best = true;
        }
    }
    return report;
}

}  // namespace stakecast
