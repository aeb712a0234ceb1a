#pragma once

#include "stakecast/series.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace stakecast {

/// Which CSV columns carry the date and the value. Dates are YYYY-MM-DD,
/// the only supported format.
struct FeedSchema {
    std::string date_column = "date";
    std::string value_column = "value";

    /// Throws InvalidSpec if a name is empty or both names are equal.
    void validate() const;
};

/// Parses a header-bearing CSV feed. Rows are returned sorted by date; gaps
/// are left for repair_gaps.
///
/// Throws MissingColumn, ParseError (message carries the 1-based line
/// number) or DuplicateDate. Non-finite values are rejected as ParseError.
DatedSeries read_feed(std::istream& in, const FeedSchema& schema, std::string_view source = "<stream>");
DatedSeries read_feed(const std::filesystem::path& path, const FeedSchema& schema);

/// Schema for a two-column file: `date` plus whatever the other column is
/// called. Throws MissingColumn if the header has no `date` column or more
/// than one candidate value column.
FeedSchema sniff_schema(const std::filesystem::path& path);

/// Writes `date_column,value_column` then one row per observation. Values are
/// printed in shortest round-trip form, so read_feed recovers them exactly.
void write_feed(std::ostream& out, const DatedSeries& series, const FeedSchema& schema);
void write_feed(const std::filesystem::path& path, const DatedSeries& series, const FeedSchema& schema);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_exact(double value);

}  // namespace stakecast
