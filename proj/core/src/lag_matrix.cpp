#include "stakecast/lag_matrix.hpp"

#include "stakecast/errors.hpp"

#include <algorithm>
#include <string>

namespace stakecast {

namespace {

void check_features(const FeatureFrame& frame, std::span<const Feature> features) {
    if (std::find(features.begin(), features.end(), Feature::Rewards) == features.end()) {
        throw Error(ErrorCode::InvalidSpec, "rewards must be among the regression features");
    }
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (std::find(features.begin(), features.begin() + static_cast<long>(i), features[i]) !=
            features.begin() + static_cast<long>(i)) {
            throw Error(ErrorCode::InvalidSpec, "feature listed twice: " + std::string(feature_name(features[i])));
        }
        if (!frame.has(features[i])) {
            throw Error(ErrorCode::MissingFeature, std::string(feature_name(features[i])));
        }
    }
}

}  // namespace

LagMatrix LagMatrix::from_dense(std::size_t cols, std::vector<double> features, std::vector<double> targets) {
    if (cols == 0 ? !features.empty() : features.size() != cols * targets.size()) {
        throw Error(ErrorCode::DimensionMismatch, "dense design does not match rows x cols");
    }
    LagMatrix m;
    m.cols_ = cols;
    m.features_ = std::move(features);
    m.targets_ = std::move(targets);
    return m;
}

void lag_features(const FeatureFrame& frame, std::span<const Feature> features, int lags, std::size_t origin,
                  std::vector<double>& out) {
    const auto l = static_cast<std::size_t>(lags);
    out.clear();
    for (Feature f : features) {
        const auto v = frame.values(f);
        out.insert(out.end(), v.begin() + static_cast<long>(origin + 1 - l), v.begin() + static_cast<long>(origin + 1));
    }
}

LagMatrix build_lag_matrix(const FeatureFrame& frame, std::span<const Feature> features, int lags, int horizon) {
    if (lags < 1 || horizon < 1) throw Error(ErrorCode::InvalidSpec, "lags and horizon must be at least 1");
    check_features(frame, features);
    const std::size_t total = frame.size();
    const auto l = static_cast<std::size_t>(lags);
    const auto n = static_cast<std::size_t>(horizon);
    if (total < l + n) {
        throw Error(ErrorCode::FrameTooShort, "frame of " + std::to_string(total) + " days needs at least " +
                                                  std::to_string(l + n) + " for L=" + std::to_string(lags) +
                                                  ", n=" + std::to_string(horizon));
    }

    LagMatrix m;
    m.cols_ = features.size() * l;
    for (Feature f : features) {
        for (int k = lags - 1; k >= 0; --k) m.layout_.push_back({f, k});
    }
    const std::size_t rows = total - l - n + 1;
    m.features_.reserve(rows * m.cols_);
    m.targets_.reserve(rows);
    const auto rewards = frame.rewards().values();
    std::vector<double> buf;
    for (std::size_t origin = l - 1; origin + n < total; ++origin) {
        lag_features(frame, features, lags, origin, buf);
        m.features_.insert(m.features_.end(), buf.begin(), buf.end());
        m.targets_.push_back(rewards[origin + n]);
        m.origins_.push_back(origin);
        m.origin_dates_.push_back(frame.date_at(origin));
    }
    return m;
}

}  // namespace stakecast
