#pragma once

#include "stakecast/eval.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stakecast {

/// Flattened per-asset results: what a report table shows. Built from an
/// EvalReport, or read back from a report.csv.
struct AssetTable {
    std::string asset;
    std::vector<Method> methods;
    std::vector<int> horizons;
    /// Unset value = failed cell.
    std::map<std::pair<Method, int>, std::optional<double>> values;
    std::map<std::pair<Method, int>, std::size_t> points;
    /// One line per failed cell, e.g. "SLR n=3: NoFolds: ...".
    std::vector<std::string> notes;

    [[nodiscard]] std::optional<double> value(Method method, int horizon) const;
    /// True when the cell holds the smallest value among methods at `horizon`.
    [[nodiscard]] bool is_best(Method method, int horizon) const;
};

AssetTable to_asset_table(std::string asset, const EvalReport& report);

/// Three decimals, as in the printed tables. Full precision belongs in CSV.
std::string format_table_value(double value);

/// Dash rendered for a failed cell.
inline constexpr std::string_view kMissingCell = "—";

/// Single-horizon table, one row per method: | Method | RMSE/Mean | Points |.
/// The smallest value is bold.
std::string render_backtest_markdown(const AssetTable& table, int horizon);

/// Horizon table with one row per horizon and, for each asset, one column per
/// method. The per-row minimum within each asset is bold; failed cells are
/// dashes, explained in notes under the table.
std::string render_sweep_markdown(std::span<const AssetTable> assets);

/// Columns: method,horizon,rmse_over_mean,n_points. Values are written in
/// shortest round-trip form; a failed cell has an empty rmse_over_mean.
void write_report_csv(std::ostream& out, const EvalReport& report);
/// Inverse of write_report_csv. Throws ParseError / MissingColumn.
AssetTable read_report_csv(std::istream& in, std::string asset, std::string_view source = "<stream>");

/// Columns: date,actual,predicted. One row per pooled test point.
void write_trace_csv(std::ostream& out, const CellReport& cell);

/// Dates plus the actual series and one predicted series per label, all of
/// equal length.
struct TraceChart {
    std::string title;
    std::vector<Date> dates;
    std::vector<double> actual;
    std::vector<std::pair<std::string, std::vector<double>>> predicted;
};

/// Chart of every successful cell at `horizon`. Predictions are joined to
/// the first successful cell's dates; methods whose dates differ are left out.
TraceChart chart_for_horizon(const EvalReport& report, int horizon, std::string title);

/// Standalone SVG line chart: one <polyline> per series (actual first), date
/// ticks on the x axis, value ticks on the y axis, and a legend.
/// Throws EmptyTrace when there are no dates; LengthMismatch when a series
/// differs in length from the dates.
std::string render_svg(const TraceChart& chart);

}  // namespace stakecast
