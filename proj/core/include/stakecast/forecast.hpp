#pragma once

#include "stakecast/lag_matrix.hpp"
#include "stakecast/ols.hpp"
#include "stakecast/series.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace stakecast {

enum class Method {
    Mwa,  ///< mean of the trailing window
    Slr,  ///< OLS on lagged rewards only
    Mlr,  ///< OLS on lagged rewards, price and trends
};

std::string_view method_name(Method method) noexcept;  // "MWA", "SLR", "MLR"
std::string_view method_slug(Method method) noexcept;  // "mwa", "slr", "mlr"
std::optional<Method> parse_method(std::string_view text) noexcept;

/// Multi-step strategy. Only direct (one model per horizon) is implemented.
enum class Strategy { Direct };

struct ForecastSpec {
    Method method = Method::Mwa;
    int window = 7;
    int lags = 7;
    int horizon = 1;
    /// Unset means the per-method default: on for MLR, off otherwise.
    std::optional<bool> normalize;
    double ridge_eps = kDefaultRidgeEps;
    Strategy strategy = Strategy::Direct;

    [[nodiscard]] bool normalize_enabled() const noexcept {
        return normalize.value_or(method == Method::Mlr);
    }
    /// Series the method reads: rewards for MWA/SLR, all three for MLR.
    [[nodiscard]] std::vector<Feature> features() const;
    /// Observations needed up to and including the origin: W or L.
    [[nodiscard]] std::size_t min_history() const noexcept;

    /// Throws InvalidSpec when window, lags or horizon < 1 or ridge_eps < 0.
    void validate() const;
};

/// Mean of the last `window` values. The same level is issued for every
/// horizon, so `horizon` only participates in validation.
/// Throws InsufficientHistory when history.size() < window.
double mwa_predict(std::span<const double> history, int window, int horizon = 1);

/// A forecaster fitted for one method and one horizon. Immutable.
class Forecaster {
public:
    [[nodiscard]] const ForecastSpec& spec() const noexcept { return spec_; }
    /// Present for SLR and MLR.
    [[nodiscard]] const std::optional<OlsModel>& model() const noexcept { return model_; }

    /// Prediction for rewards at origin + horizon. Reads only frame positions
    /// <= origin, so the target itself need not exist in `frame`.
    /// Throws InsufficientHistory if origin + 1 < min_history(),
    /// InvalidSpec if origin is past the frame end, MissingFeature if the
    /// frame lacks a series the model uses.
    [[nodiscard]] double predict_at(const FeatureFrame& frame, std::size_t origin) const;

private:
    friend Forecaster fit_direct(const FeatureFrame&, const ForecastSpec&);

    ForecastSpec spec_;
    std::optional<OlsModel> model_;
};

/// Fits one forecaster on the whole of `frame` for spec.horizon.
/// MWA needs frame.size() >= W and has nothing to learn; SLR/MLR fit OLS on
/// build_lag_matrix(frame, spec.features(), L, n).
Forecaster fit_direct(const FeatureFrame& frame, const ForecastSpec& spec);

}  // namespace stakecast
