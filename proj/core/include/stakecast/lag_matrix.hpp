#pragma once

#include "stakecast/series.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace stakecast {

/// One design-matrix column: `feature` observed `offset` days before the
/// forecast origin (offset 0 is the origin itself).
struct LagColumn {
    Feature feature;
    int offset;

    friend bool operator==(const LagColumn&, const LagColumn&) = default;
};

/// Supervised rows for direct n-step regression. Each row holds, for every
/// selected feature in order, the L values ending at the origin (oldest
/// first); the target is rewards at origin + n.
class LagMatrix {
public:
    LagMatrix() = default;

    /// Generic dense matrix with no feature layout, for fitting arbitrary
    /// designs. `features` is row-major with `cols` columns.
    static LagMatrix from_dense(std::size_t cols, std::vector<double> features, std::vector<double> targets);

    [[nodiscard]] std::size_t rows() const noexcept { return targets_.size(); }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
        return {features_.data() + i * cols_, cols_};
    }
    [[nodiscard]] double target(std::size_t i) const noexcept { return targets_[i]; }
    [[nodiscard]] std::span<const double> targets() const noexcept { return targets_; }
    [[nodiscard]] std::span<const LagColumn> layout() const noexcept { return layout_; }
    /// Frame position of each row's forecast origin.
    [[nodiscard]] std::span<const std::size_t> origins() const noexcept { return origins_; }
    [[nodiscard]] std::span<const Date> origin_dates() const noexcept { return origin_dates_; }

    friend LagMatrix build_lag_matrix(const FeatureFrame&, std::span<const Feature>, int, int);

private:
    std::size_t cols_ = 0;
    std::vector<double> features_;
    std::vector<double> targets_;
    std::vector<LagColumn> layout_;
    std::vector<std::size_t> origins_;
    std::vector<Date> origin_dates_;
};

/// Builds rows for every origin t in [L-1, T-n-1], i.e. T - L - n + 1 rows.
///
/// Throws InvalidSpec when rewards is not among `features`, a feature is
/// repeated, or lags/horizon < 1; MissingFeature when the frame lacks a
/// requested series; FrameTooShort when T < L + n.
LagMatrix build_lag_matrix(const FeatureFrame& frame, std::span<const Feature> features, int lags, int horizon);

/// Writes the feature vector for a single origin, in the same column order
/// as build_lag_matrix. Reads only positions origin-L+1 .. origin.
void lag_features(const FeatureFrame& frame, std::span<const Feature> features, int lags, std::size_t origin,
                  std::vector<double>& out);

}  // namespace stakecast
