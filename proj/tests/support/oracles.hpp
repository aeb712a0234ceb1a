#pragma once

// Test-only reference computations. Nothing here calls into the library's
// solver or evaluation code paths.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace stakecast::testing {

struct PinvSolution {
    double intercept = 0.0;
    std::vector<double> coefficients;
};

/// Least squares with an intercept via the SVD pseudo-inverse of [1 | X].
/// `x` is row-major rows x cols.
inline PinvSolution pinv_least_squares(const std::vector<double>& x, const std::vector<double>& y, std::size_t cols) {
    const auto rows = static_cast<Eigen::Index>(y.size());
    Eigen::MatrixXd a(rows, static_cast<Eigen::Index>(cols) + 1);
    Eigen::VectorXd b(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        a(r, 0) = 1.0;
        for (std::size_t c = 0; c < cols; ++c) {
            a(r, static_cast<Eigen::Index>(c) + 1) = x[static_cast<std::size_t>(r) * cols + c];
        }
        b(r) = y[static_cast<std::size_t>(r)];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    const double tol = std::max(a.rows(), a.cols()) * s(0) * Eigen::NumTraits<double>::epsilon();
    Eigen::VectorXd s_inv(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) s_inv(i) = s(i) > tol ? 1.0 / s(i) : 0.0;
    const Eigen::VectorXd beta = svd.matrixV() * s_inv.asDiagonal() * svd.matrixU().transpose() * b;

    PinvSolution out;
    out.intercept = beta(0);
    for (Eigen::Index i = 1; i < beta.size(); ++i) out.coefficients.push_back(beta(i));
    return out;
}

/// Ridge oracle in closed form on the centered problem: the unpenalized
/// intercept absorbs the means, then b = (Xc'Xc + eps S^2)^+ Xc'yc with S the
/// diagonal of population column standard deviations (penalty on the
/// standardized scale).
inline PinvSolution ridge_closed_form(const std::vector<double>& x, const std::vector<double>& y, std::size_t cols,
                                      double eps) {
    const auto rows = static_cast<Eigen::Index>(y.size());
    Eigen::MatrixXd xm(rows, static_cast<Eigen::Index>(cols));
    Eigen::VectorXd yv(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            xm(r, static_cast<Eigen::Index>(c)) = x[static_cast<std::size_t>(r) * cols + c];
        }
        yv(r) = y[static_cast<std::size_t>(r)];
    }
    const Eigen::RowVectorXd mx = xm.colwise().mean();
    const double my = yv.mean();
    const Eigen::MatrixXd xc = xm.rowwise() - mx;
    const Eigen::VectorXd yc = yv.array() - my;
    Eigen::MatrixXd g = xc.transpose() * xc;
    const Eigen::ArrayXd var = (xc.array().square().colwise().sum() / static_cast<double>(rows)).transpose();
    g.diagonal().array() += eps * var;
    const Eigen::VectorXd b = g.completeOrthogonalDecomposition().solve(xc.transpose() * yc);
    PinvSolution out;
    out.intercept = my - mx.dot(b);
    out.coefficients.assign(b.data(), b.data() + b.size());
    return out;
}

/// iid Normal(mu, sigma^2) values from its own engine, independent of the
/// library generator.
inline std::vector<double> iid_normal(std::size_t n, double mu, double sigma, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(mu, sigma);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

/// Fresh scratch directory under the build tree.
inline std::filesystem::path scratch_dir(const std::string& name) {
#ifdef STAKECAST_TEST_TMP
    std::filesystem::path root = STAKECAST_TEST_TMP;
#else
    std::filesystem::path root = std::filesystem::temp_directory_path() / "stakecast_tests";
#endif
    auto dir = root / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace stakecast::testing
