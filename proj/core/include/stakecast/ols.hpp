#pragma once

#include "stakecast/lag_matrix.hpp"

#include <span>
#include <vector>

namespace stakecast {

inline constexpr double kDefaultRidgeEps = 1e-8;

/// Fitted affine model  y = intercept + sum_j coef_j * (x_j - mean_j) / std_j.
/// Without normalization the statistics are the identity (mean 0, std 1).
struct OlsModel {
    std::vector<double> coefficients;
    double intercept = 0.0;
    std::vector<double> feature_means;
    std::vector<double> feature_stds;
    std::vector<LagColumn> layout;
    bool normalized = false;
    double ridge_eps = 0.0;
};

/// Least squares with an intercept:
///
///   minimize  sum_i (y_i - b0 - b . z_i)^2 + ridge_eps * |b|^2
///
/// where z_i are the z-scored feature rows. The penalty always acts on the
/// standardized coefficients, which keeps fits invariant to the units of each
/// feature; the intercept is not penalized. Solved by Householder QR on the
/// design augmented with sqrt(ridge_eps) rows, never by forming the normal
/// equations.
///
/// With `normalize` the model keeps the training means/stds and standardized
/// coefficients; without it the coefficients are mapped back to raw units and
/// the statistics are the identity. Predictions are the same either way.
///
/// Zero-variance columns get std 1. Throws DegenerateSystem if the matrix has
/// no rows, or if ridge_eps == 0 and the design [1 | Z] is numerically rank
/// deficient; InvalidSpec for a negative or non-finite ridge_eps.
OlsModel ols_fit(const LagMatrix& matrix, bool normalize, double ridge_eps = kDefaultRidgeEps);

/// Throws DimensionMismatch when `features` does not match the model width.
double ols_predict(const OlsModel& model, std::span<const double> features);

}  // namespace stakecast
