#include "stakecast/ols.hpp"

#include "stakecast/errors.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>

namespace stakecast {

namespace {

/// Column-major dense matrix, just enough for an in-place QR.
struct DenseColMajor {
    std::size_t rows;
    std::size_t cols;
    std::vector<double> data;

    DenseColMajor(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return data[j * rows + i]; }
    double at(std::size_t i, std::size_t j) const { return data[j * rows + i]; }
};

/// Reduces `a` to upper-triangular R in place (top min(rows, cols) rows) and
/// applies the same reflections to `rhs`.
void householder_qr(DenseColMajor& a, std::vector<double>& rhs) {
    const std::size_t m = a.rows;
    const std::size_t steps = std::min(a.rows, a.cols);
    std::vector<double> v(m);
    for (std::size_t j = 0; j < steps; ++j) {
        double norm2 = 0.0;
        for (std::size_t i = j; i < m; ++i) norm2 += a.at(i, j) * a.at(i, j);
        if (norm2 == 0.0) continue;
        const double norm = std::sqrt(norm2);
        const double alpha = a.at(j, j) > 0.0 ? -norm : norm;

        for (std::size_t i = j; i < m; ++i) v[i] = a.at(i, j);
        v[j] -= alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = j; i < m; ++i) vnorm2 += v[i] * v[i];
        if (vnorm2 == 0.0) continue;

        auto reflect = [&](auto&& elem) {
            double s = 0.0;
            for (std::size_t i = j; i < m; ++i) s += v[i] * elem(i);
            const double f = 2.0 * s / vnorm2;
            for (std::size_t i = j; i < m; ++i) elem(i) -= f * v[i];
        };
        a.at(j, j) = alpha;
        for (std::size_t i = j + 1; i < m; ++i) a.at(i, j) = 0.0;
        for (std::size_t c = j + 1; c < a.cols; ++c) {
            reflect([&](std::size_t i) -> double& { return a.at(i, c); });
        }
        reflect([&](std::size_t i) -> double& { return rhs[i]; });
    }
}

void column_stats(const LagMatrix& matrix, std::vector<double>& means, std::vector<double>& stds) {
    const std::size_t p = matrix.cols();
    means.assign(p, 0.0);
    stds.assign(p, 1.0);
    const auto n = static_cast<double>(matrix.rows());
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        const auto row = matrix.row(r);
        for (std::size_t j = 0; j < p; ++j) means[j] += row[j];
    }
    for (auto& m : means) m /= n;
    std::vector<double> ss(p, 0.0);
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        const auto row = matrix.row(r);
        for (std::size_t j = 0; j < p; ++j) ss[j] += (row[j] - means[j]) * (row[j] - means[j]);
    }
    for (std::size_t j = 0; j < p; ++j) {
        const double sd = std::sqrt(ss[j] / n);
        // Constant columns: centering already made them zero, keep them that way.
        stds[j] = (sd == 0.0 || sd <= 1e-10 * std::abs(means[j])) ? 1.0 : sd;
    }
}

}  // namespace

OlsModel ols_fit(const LagMatrix& matrix, bool normalize, double ridge_eps) {
    if (!(ridge_eps >= 0.0) || !std::isfinite(ridge_eps)) {
        throw Error(ErrorCode::InvalidSpec, "ridge_eps must be a finite non-negative number");
    }
    if (matrix.rows() == 0) throw Error(ErrorCode::DegenerateSystem, "no training rows");

    OlsModel model;
    model.normalized = normalize;
    model.ridge_eps = ridge_eps;
    model.layout.assign(matrix.layout().begin(), matrix.layout().end());
    std::vector<double> means;
    std::vector<double> stds;
    column_stats(matrix, means, stds);

    const std::size_t n = matrix.rows();
    const std::size_t p = matrix.cols();
    const std::size_t k = p + 1;
    const std::size_t penalty_rows = ridge_eps > 0.0 ? p : 0;
    const std::size_t m = n + penalty_rows;

    DenseColMajor a(m, k);
    std::vector<double> rhs(m, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const auto row = matrix.row(r);
        a.at(r, 0) = 1.0;
        for (std::size_t j = 0; j < p; ++j) {
            a.at(r, j + 1) = (row[j] - means[j]) / stds[j];
        }
        rhs[r] = matrix.target(r);
    }
    const double root_eps = std::sqrt(ridge_eps);
    for (std::size_t j = 0; j < penalty_rows; ++j) a.at(n + j, j + 1) = root_eps;

    householder_qr(a, rhs);

    double max_diag = 0.0;
    for (std::size_t j = 0; j < std::min(m, k); ++j) max_diag = std::max(max_diag, std::abs(a.at(j, j)));
    const double tol = static_cast<double>(std::max(m, k)) * DBL_EPSILON * max_diag;
    for (std::size_t j = 0; j < k; ++j) {
        const double d = j < m ? std::abs(a.at(j, j)) : 0.0;
        if (d == 0.0 || (ridge_eps == 0.0 && d <= tol)) {
            throw Error(ErrorCode::DegenerateSystem,
                        "design of " + std::to_string(n) + " rows x " + std::to_string(k) +
                            " columns is rank deficient (column " + std::to_string(j) + ")");
        }
    }

    std::vector<double> beta(k, 0.0);
    for (std::size_t jj = k; jj-- > 0;) {
        double s = rhs[jj];
        for (std::size_t c = jj + 1; c < k; ++c) s -= a.at(jj, c) * beta[c];
        beta[jj] = s / a.at(jj, jj);
    }
    if (normalize) {
        model.intercept = beta[0];
        model.coefficients.assign(beta.begin() + 1, beta.end());
        model.feature_means = std::move(means);
        model.feature_stds = std::move(stds);
        return model;
    }
    // Back to raw units: b_raw = b_z / s, b0_raw = b0 - sum b_z m / s.
    model.intercept = beta[0];
    model.coefficients.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        model.coefficients[j] = beta[j + 1] / stds[j];
        model.intercept -= model.coefficients[j] * means[j];
    }
    model.feature_means.assign(p, 0.0);
    model.feature_stds.assign(p, 1.0);
    return model;
}

double ols_predict(const OlsModel& model, std::span<const double> features) {
    if (features.size() != model.coefficients.size()) {
        throw Error(ErrorCode::DimensionMismatch, "model expects " + std::to_string(model.coefficients.size()) +
                                                      " features, got " + std::to_string(features.size()));
    }
    double y = model.intercept;
    for (std::size_t j = 0; j < features.size(); ++j) {
        y += model.coefficients[j] * (features[j] - model.feature_means[j]) / model.feature_stds[j];
    }
    return y;
}

}  // namespace stakecast
