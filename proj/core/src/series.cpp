#include "stakecast/series.hpp"

#include "stakecast/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace stakecast {

namespace {

void require_finite(std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw Error(ErrorCode::InvalidSeries, "non-finite value at position " + std::to_string(i));
        }
    }
}

}  // namespace

DatedSeries::DatedSeries(std::vector<Date> dates, std::vector<double> values)
    : dates_(std::move(dates)), values_(std::move(values)) {
    if (dates_.size() != values_.size()) {
        throw Error(ErrorCode::InvalidSeries, "dates and values differ in length");
    }
    for (std::size_t i = 1; i < dates_.size(); ++i) {
        if (dates_[i] <= dates_[i - 1]) {
            throw Error(ErrorCode::InvalidSeries, "dates not strictly increasing at " + format_date(dates_[i]));
        }
    }
    require_finite(values_);
}

DailySeries::DailySeries(Date start, std::vector<double> values) : start_(start), values_(std::move(values)) {
    if (values_.empty()) throw Error(ErrorCode::InvalidSeries, "daily series must hold at least one value");
    require_finite(values_);
}

DailySeries DailySeries::between(Date from, Date to) const {
    const long begin = days_between(start_, from);
    const long last = days_between(start_, to);
    if (begin < 0 || last < begin || last >= static_cast<long>(values_.size())) {
        throw Error(ErrorCode::InvalidSeries, "range " + format_date(from) + ".." + format_date(to) +
                                                  " outside series");
    }
    return slice(static_cast<std::size_t>(begin), static_cast<std::size_t>(last) + 1);
}

DailySeries DailySeries::slice(std::size_t begin, std::size_t end) const {
    if (begin >= end || end > values_.size()) {
        throw Error(ErrorCode::InvalidSeries, "slice out of range");
    }
    return DailySeries(date_at(begin), std::vector<double>(values_.begin() + static_cast<long>(begin),
                                                           values_.begin() + static_cast<long>(end)));
}

DatedSeries DailySeries::to_dated() const {
    std::vector<Date> dates(values_.size());
    for (std::size_t i = 0; i < dates.size(); ++i) dates[i] = date_at(i);
    return DatedSeries(std::move(dates), values_);
}

std::string_view feature_name(Feature feature) noexcept {
    switch (feature) {
        case Feature::Rewards: return "rewards";
        case Feature::Price: return "price";
        case Feature::Trends: return "trends";
    }
    return "unknown";
}

FeatureFrame::FeatureFrame(DailySeries rewards, std::optional<DailySeries> price, std::optional<DailySeries> trends)
    : rewards_(std::move(rewards)), price_(std::move(price)), trends_(std::move(trends)) {
    auto check = [this](const std::optional<DailySeries>& s, Feature f) {
        if (s && (s->start() != rewards_.start() || s->size() != rewards_.size())) {
            throw Error(ErrorCode::InvalidSeries,
                        std::string(feature_name(f)) + " does not share the rewards date range");
        }
    };
    check(price_, Feature::Price);
    check(trends_, Feature::Trends);
}

bool FeatureFrame::has(Feature feature) const noexcept {
    switch (feature) {
        case Feature::Rewards: return true;
        case Feature::Price: return price_.has_value();
        case Feature::Trends: return trends_.has_value();
    }
    return false;
}

std::span<const double> FeatureFrame::values(Feature feature) const {
    switch (feature) {
        case Feature::Rewards: return rewards_.values();
        case Feature::Price:
            if (price_) return price_->values();
            break;
        case Feature::Trends:
            if (trends_) return trends_->values();
            break;
    }
    throw Error(ErrorCode::MissingFeature, std::string(feature_name(feature)));
}

FeatureFrame FeatureFrame::slice(std::size_t begin, std::size_t end) const {
    auto cut = [&](const std::optional<DailySeries>& s) -> std::optional<DailySeries> {
        if (!s) return std::nullopt;
        return s->slice(begin, end);
    };
    return FeatureFrame(rewards_.slice(begin, end), cut(price_), cut(trends_));
}

DailySeries repair_gaps(const DatedSeries& series, int max_gap) {
    if (max_gap < 0) throw Error(ErrorCode::InvalidSpec, "max_gap must be non-negative");
    if (series.empty()) throw Error(ErrorCode::InvalidSeries, "cannot repair an empty series");

    const auto dates = series.dates();
    const auto values = series.values();
    std::vector<double> filled;
    filled.reserve(static_cast<std::size_t>(days_between(dates.front(), dates.back())) + 1);
    filled.push_back(values[0]);
    for (std::size_t i = 1; i < dates.size(); ++i) {
        const long missing = days_between(dates[i - 1], dates[i]) - 1;
        if (missing > max_gap) {
            throw Error(ErrorCode::GapTooLarge, std::to_string(missing) + " missing days after " +
                                                    format_date(dates[i - 1]) + " (max " +
                                                    std::to_string(max_gap) + ")");
        }
        filled.insert(filled.end(), static_cast<std::size_t>(missing), values[i - 1]);
        filled.push_back(values[i]);
    }
    return DailySeries(dates.front(), std::move(filled));
}

FeatureFrame align(const DailySeries& rewards, const std::optional<DailySeries>& price,
                   const std::optional<DailySeries>& trends) {
    Date from = rewards.start();
    Date to = rewards.end();
    for (const auto* s : {&price, &trends}) {
        if (*s) {
            from = std::max(from, (*s)->start());
            to = std::min(to, (*s)->end());
        }
    }
    if (from > to) {
        throw Error(ErrorCode::EmptyIntersection, "feeds share no common dates");
    }
    auto cut = [&](const std::optional<DailySeries>& s) -> std::optional<DailySeries> {
        if (!s) return std::nullopt;
        return s->between(from, to);
    };
    return FeatureFrame(rewards.between(from, to), cut(price), cut(trends));
}

}  // namespace stakecast
