#pragma once

#include "stakecast/date.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace stakecast {

/// Dated observations as read from a feed: strictly increasing dates, finite
/// values, but days may be missing.
class DatedSeries {
public:
    DatedSeries() = default;
    /// Throws InvalidSeries on size mismatch, non-increasing dates or
    /// non-finite values.
    DatedSeries(std::vector<Date> dates, std::vector<double> values);

    [[nodiscard]] std::size_t size() const noexcept { return dates_.size(); }
    [[nodiscard]] bool empty() const noexcept { return dates_.empty(); }
    [[nodiscard]] std::span<const Date> dates() const noexcept { return dates_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    friend bool operator==(const DatedSeries&, const DatedSeries&) = default;

private:
    std::vector<Date> dates_;
    std::vector<double> values_;
};

/// Uniformly spaced daily series. Consecutive values are exactly one day
/// apart, so only the first date is stored.
class DailySeries {
public:
    /// Throws InvalidSeries when `values` is empty or holds a non-finite value.
    DailySeries(Date start, std::vector<double> values);

    [[nodiscard]] Date start() const noexcept { return start_; }
    [[nodiscard]] Date end() const noexcept {
        return start_ + std::chrono::days{static_cast<long>(values_.size()) - 1};
    }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] Date date_at(std::size_t i) const noexcept {
        return start_ + std::chrono::days{static_cast<long>(i)};
    }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }

    /// Sub-series over the inclusive date range [from, to]; both must lie
    /// inside this series.
    [[nodiscard]] DailySeries between(Date from, Date to) const;
    /// Sub-series of positions [begin, end).
    [[nodiscard]] DailySeries slice(std::size_t begin, std::size_t end) const;

    /// The dated view of this series (no gaps).
    [[nodiscard]] DatedSeries to_dated() const;

    friend bool operator==(const DailySeries&, const DailySeries&) = default;

private:
    Date start_;
    std::vector<double> values_;
};

enum class Feature { Rewards, Price, Trends };

std::string_view feature_name(Feature feature) noexcept;

/// Date-aligned bundle of the reward series and the optional price and
/// search-trends series. All present series share one date range.
class FeatureFrame {
public:
    /// Throws InvalidSeries if the optional series do not cover exactly the
    /// rewards' date range.
    explicit FeatureFrame(DailySeries rewards, std::optional<DailySeries> price = std::nullopt,
                          std::optional<DailySeries> trends = std::nullopt);

    [[nodiscard]] Date start() const noexcept { return rewards_.start(); }
    [[nodiscard]] Date end() const noexcept { return rewards_.end(); }
    [[nodiscard]] std::size_t size() const noexcept { return rewards_.size(); }
    [[nodiscard]] Date date_at(std::size_t i) const noexcept { return rewards_.date_at(i); }

    [[nodiscard]] const DailySeries& rewards() const noexcept { return rewards_; }
    [[nodiscard]] const std::optional<DailySeries>& price() const noexcept { return price_; }
    [[nodiscard]] const std::optional<DailySeries>& trends() const noexcept { return trends_; }

    [[nodiscard]] bool has(Feature feature) const noexcept;
    /// Throws MissingFeature when the series is absent.
    [[nodiscard]] std::span<const double> values(Feature feature) const;

    /// Frame restricted to positions [begin, end).
    [[nodiscard]] FeatureFrame slice(std::size_t begin, std::size_t end) const;

    friend bool operator==(const FeatureFrame&, const FeatureFrame&) = default;

private:
    DailySeries rewards_;
    std::optional<DailySeries> price_;
    std::optional<DailySeries> trends_;
};

inline constexpr int kDefaultMaxGap = 3;

/// Fills interior runs of at most `max_gap` missing days by carrying the last
/// observation forward. Throws GapTooLarge for longer runs and
/// InvalidSeries for an empty input.
DailySeries repair_gaps(const DatedSeries& series, int max_gap = kDefaultMaxGap);

/// Truncates every series to the intersection of their date ranges. Throws
/// EmptyIntersection when the ranges are disjoint.
FeatureFrame align(const DailySeries& rewards, const std::optional<DailySeries>& price = std::nullopt,
                   const std::optional<DailySeries>& trends = std::nullopt);

}  // namespace stakecast
