#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace stakecast {

/// Calendar day with no time zone.
using Date = std::chrono::sys_days;

/// Parses strict YYYY-MM-DD. Returns nullopt for anything else, including
/// impossible dates such as 2022-02-30.
std::optional<Date> parse_date(std::string_view text);

std::string format_date(Date date);

/// Whole days from `from` to `to` (negative when `to` precedes `from`).
inline long days_between(Date from, Date to) { return (to - from).count(); }

}  // namespace stakecast
