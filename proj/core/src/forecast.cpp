#include "stakecast/forecast.hpp"

#include "stakecast/errors.hpp"

#include <cmath>
#include <string>

namespace stakecast {

std::string_view method_name(Method method) noexcept {
    switch (method) {
        case Method::Mwa: return "MWA";
        case Method::Slr: return "SLR";
        case Method::Mlr: return "MLR";
    }
    return "?";
}

std::string_view method_slug(Method method) noexcept {
    switch (method) {
        case Method::Mwa: return "mwa";
        case Method::Slr: return "slr";
        case Method::Mlr: return "mlr";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view text) noexcept {
    for (auto m : {Method::Mwa, Method::Slr, Method::Mlr}) {
        if (text == method_slug(m) || text == method_name(m)) return m;
    }
    return std::nullopt;
}

std::vector<Feature> ForecastSpec::features() const {
    if (method == Method::Mlr) return {Feature::Rewards, Feature::Price, Feature::Trends};
    return {Feature::Rewards};
}

std::size_t ForecastSpec::min_history() const noexcept {
    return static_cast<std::size_t>(method == Method::Mwa ? window : lags);
}

void ForecastSpec::validate() const {
    if (window < 1) throw Error(ErrorCode::InvalidSpec, "window must be at least 1");
    if (lags < 1) throw Error(ErrorCode::InvalidSpec, "lags must be at least 1");
    if (horizon < 1) throw Error(ErrorCode::InvalidSpec, "horizon must be at least 1");
    if (!(ridge_eps >= 0.0) || !std::isfinite(ridge_eps)) {
        throw Error(ErrorCode::InvalidSpec, "ridge_eps must be a finite non-negative number");
    }
}

double mwa_predict(std::span<const double> history, int window, int horizon) {
    if (window < 1 || horizon < 1) throw Error(ErrorCode::InvalidSpec, "window and horizon must be at least 1");
    const auto w = static_cast<std::size_t>(window);
    if (history.size() < w) {
        throw Error(ErrorCode::InsufficientHistory, "moving average needs " + std::to_string(w) +
                                                        " observations, have " + std::to_string(history.size()));
    }
    double sum = 0.0;
    for (std::size_t i = history.size() - w; i < history.size(); ++i) sum += history[i];
    return sum / static_cast<double>(w);
}

double Forecaster::predict_at(const FeatureFrame& frame, std::size_t origin) const {
    if (origin >= frame.size()) {
        throw Error(ErrorCode::InvalidSpec, "origin " + std::to_string(origin) + " past frame end (size " +
                                                std::to_string(frame.size()) + ")");
    }
    const std::size_t need = spec_.min_history();
    if (origin + 1 < need) {
        throw Error(ErrorCode::InsufficientHistory, "origin " + std::to_string(origin) + " has " +
                                                        std::to_string(origin + 1) + " observations, needs " +
                                                        std::to_string(need));
    }
    if (!model_) {
        return mwa_predict(frame.rewards().values().first(origin + 1), spec_.window, spec_.horizon);
    }
    const auto features = spec_.features();
    std::vector<double> x;
    lag_features(frame, features, spec_.lags, origin, x);
    return ols_predict(*model_, x);
}

Forecaster fit_direct(const FeatureFrame& frame, const ForecastSpec& spec) {
    spec.validate();
    Forecaster f;
    f.spec_ = spec;
    if (spec.method == Method::Mwa) {
        if (frame.size() < spec.min_history()) {
            throw Error(ErrorCode::InsufficientHistory, "moving average needs " + std::to_string(spec.window) +
                                                            " observations, frame has " +
                                                            std::to_string(frame.size()));
        }
        return f;
    }
    const auto features = spec.features();
    const LagMatrix matrix = build_lag_matrix(frame, features, spec.lags, spec.horizon);
    f.model_ = ols_fit(matrix, spec.normalize_enabled(), spec.ridge_eps);
    return f;
}

}  // namespace stakecast
