#include "stakecast/ingest.hpp"

#include "stakecast/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>

namespace stakecast {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        fields.push_back(trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return fields;
}

bool blank(std::string_view line) { return trim(line).empty(); }

std::optional<double> parse_value(std::string_view text) {
    double v = 0.0;
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::vector<std::string> read_header(std::istream& in, std::size_t& line_no) {
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (blank(line)) continue;
        std::vector<std::string> names;
        for (auto f : split_fields(line)) names.emplace_back(f);
        return names;
    }
    return {};
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name, std::string_view source) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
        throw Error(ErrorCode::MissingColumn, std::string(source) + ": column '" + name + "' not in header");
    }
    return static_cast<std::size_t>(it - header.begin());
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    return in;
}

}  // namespace

void FeedSchema::validate() const {
    if (date_column.empty() || value_column.empty()) {
        throw Error(ErrorCode::InvalidSpec, "feed schema column names must be non-empty");
    }
    if (date_column == value_column) {
        throw Error(ErrorCode::InvalidSpec, "feed schema columns must be distinct");
    }
}

DatedSeries read_feed(std::istream& in, const FeedSchema& schema, std::string_view source) {
    schema.validate();
    std::size_t line_no = 0;
    const auto header = read_header(in, line_no);
    if (header.empty()) throw Error(ErrorCode::MissingColumn, std::string(source) + ": empty file, no header");
    const std::size_t date_idx = column_index(header, schema.date_column, source);
    const std::size_t value_idx = column_index(header, schema.value_column, source);

    struct Row {
        Date date;
        double value;
        std::size_t line;
    };
    std::vector<Row> rows;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        const auto fields = split_fields(line);
        auto fail = [&](const std::string& why) {
            return Error(ErrorCode::ParseError, std::string(source) + ":" + std::to_string(line_no) + ": " + why);
        };
        if (fields.size() != header.size()) {
            throw fail("expected " + std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
        }
        const auto date = parse_date(fields[date_idx]);
        if (!date) throw fail("bad date '" + std::string(fields[date_idx]) + "'");
        const auto value = parse_value(fields[value_idx]);
        if (!value) throw fail("bad value '" + std::string(fields[value_idx]) + "'");
        rows.push_back({*date, *value, line_no});
    }

    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.date < b.date; });
    std::vector<Date> dates;
    std::vector<double> values;
    dates.reserve(rows.size());
    values.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && rows[i].date == rows[i - 1].date) {
            throw Error(ErrorCode::DuplicateDate, std::string(source) + ": " + format_date(rows[i].date) +
                                                      " on lines " + std::to_string(rows[i - 1].line) + " and " +
                                                      std::to_string(rows[i].line));
        }
        dates.push_back(rows[i].date);
        values.push_back(rows[i].value);
    }
    return DatedSeries(std::move(dates), std::move(values));
}

DatedSeries read_feed(const std::filesystem::path& path, const FeedSchema& schema) {
    auto in = open_input(path);
    return read_feed(in, schema, path.string());
}

FeedSchema sniff_schema(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::size_t line_no = 0;
    const auto header = read_header(in, line_no);
    FeedSchema schema;
    if (std::find(header.begin(), header.end(), schema.date_column) == header.end()) {
        throw Error(ErrorCode::MissingColumn, path.string() + ": column 'date' not in header");
    }
    std::vector<std::string> others;
    std::copy_if(header.begin(), header.end(), std::back_inserter(others),
                 [&](const std::string& h) { return h != schema.date_column; });
    if (others.size() != 1) {
        throw Error(ErrorCode::MissingColumn,
                    path.string() + ": cannot pick a value column from " + std::to_string(others.size()) +
                        " candidates");
    }
    schema.value_column = others.front();
    return schema;
}

std::string format_exact(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

void write_feed(std::ostream& out, const DatedSeries& series, const FeedSchema& schema) {
    schema.validate();
    out << schema.date_column << ',' << schema.value_column << '\n';
    const auto dates = series.dates();
    const auto values = series.values();
    for (std::size_t i = 0; i < dates.size(); ++i) {
        out << format_date(dates[i]) << ',' << format_exact(values[i]) << '\n';
    }
}

void write_feed(const std::filesystem::path& path, const DatedSeries& series, const FeedSchema& schema) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    write_feed(out, series, schema);
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace stakecast
