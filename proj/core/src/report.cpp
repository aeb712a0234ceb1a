#include "stakecast/report.hpp"

#include "stakecast/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace stakecast {

std::optional<double> AssetTable::value(Method method, int horizon) const {
    const auto it = values.find({method, horizon});
    if (it == values.end()) return std::nullopt;
    return it->second;
}

bool AssetTable::is_best(Method method, int horizon) const {
    const auto mine = value(method, horizon);
    if (!mine) return false;
    for (Method other : methods) {
        const auto v = value(other, horizon);
        if (v && *v < *mine) return false;
    }
    return true;
}

AssetTable to_asset_table(std::string asset, const EvalReport& report) {
    AssetTable t;
    t.asset = std::move(asset);
    t.methods = report.methods;
    t.horizons = report.horizons;
    for (const auto& c : report.cells) {
        t.values[{c.method, c.horizon}] = c.rmse_over_mean;
        t.points[{c.method, c.horizon}] = c.n_points;
        if (c.error) {
            t.notes.push_back(std::string(method_name(c.method)) + " n=" + std::to_string(c.horizon) + ": " +
                              std::string(error_name(c.error->code)) + ": " + c.error->detail);
        }
    }
    return t;
}

std::string format_table_value(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", value);
    return buf;
}

namespace {

std::string cell_text(const AssetTable& t, Method m, int h) {
    const auto v = t.value(m, h);
    if (!v) return std::string(kMissingCell);
    std::string s = format_table_value(*v);
    return t.is_best(m, h) ? "**" + s + "**" : s;
}

void append_notes(std::ostringstream& out, const AssetTable& t, bool prefix_asset) {
    for (const auto& note : t.notes) {
        out << "- " << (prefix_asset ? t.asset + " " : "") << note << '\n';
    }
}

}  // namespace

std::string render_backtest_markdown(const AssetTable& table, int horizon) {
    std::ostringstream out;
    out << "## " << table.asset << ": " << horizon << "-day-ahead prediction performance (RMSE/Mean)\n\n";
    out << "| Method | RMSE/Mean | Points |\n";
    out << "|:--|--:|--:|\n";
    for (Method m : table.methods) {
        const auto pts = table.points.find({m, horizon});
        out << "| " << method_name(m) << " | " << cell_text(table, m, horizon) << " | "
            << (pts == table.points.end() ? 0 : pts->second) << " |\n";
    }
    if (!table.notes.empty()) {
        out << "\nFailed cells:\n\n";
        append_notes(out, table, false);
    }
    return out.str();
}

std::string render_sweep_markdown(std::span<const AssetTable> assets) {
    std::vector<int> horizons;
    for (const auto& a : assets) {
        for (int h : a.horizons) {
            if (std::find(horizons.begin(), horizons.end(), h) == horizons.end()) horizons.push_back(h);
        }
    }
    std::sort(horizons.begin(), horizons.end());

    std::ostringstream out;
    out << "## N-day-ahead prediction performance (RMSE/Mean)\n\n";
    out << "| N |";
    for (const auto& a : assets) {
        for (Method m : a.methods) out << ' ' << a.asset << ' ' << method_name(m) << " |";
    }
    out << "\n|:-:|";
    for (const auto& a : assets) {
        for (std::size_t i = 0; i < a.methods.size(); ++i) out << "--:|";
    }
    out << '\n';
    for (int h : horizons) {
        out << "| " << h << " |";
        for (const auto& a : assets) {
            for (Method m : a.methods) out << ' ' << cell_text(a, m, h) << " |";
        }
        out << '\n';
    }
    const bool any_notes = std::any_of(assets.begin(), assets.end(), [](const auto& a) { return !a.notes.empty(); });
    if (any_notes) {
        out << "\nFailed cells:\n\n";
        for (const auto& a : assets) append_notes(out, a, true);
    }
    return out.str();
}

void write_report_csv(std::ostream& out, const EvalReport& report) {
    out << "method,horizon,rmse_over_mean,n_points\n";
    for (const auto& c : report.cells) {
        out << method_slug(c.method) << ',' << c.horizon << ','
            << (c.rmse_over_mean ? format_exact(*c.rmse_over_mean) : std::string()) << ',' << c.n_points << '\n';
    }
}

AssetTable read_report_csv(std::istream& in, std::string asset, std::string_view source) {
    AssetTable t;
    t.asset = std::move(asset);
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& why) {
        return Error(ErrorCode::ParseError, std::string(source) + ":" + std::to_string(line_no) + ": " + why);
    };
    if (!std::getline(in, line)) throw Error(ErrorCode::MissingColumn, std::string(source) + ": empty report");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "method,horizon,rmse_over_mean,n_points") {
        throw Error(ErrorCode::MissingColumn, std::string(source) + ": unexpected header '" + line + "'");
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) f.push_back(field);
        if (line.back() == ',') f.emplace_back();
        if (f.size() != 4) throw fail("expected 4 fields");
        const auto method = parse_method(f[0]);
        if (!method) throw fail("unknown method '" + f[0] + "'");
        int horizon = 0;
        std::size_t points = 0;
        if (std::from_chars(f[1].data(), f[1].data() + f[1].size(), horizon).ec != std::errc{} || horizon < 1) {
            throw fail("bad horizon '" + f[1] + "'");
        }
        if (std::from_chars(f[3].data(), f[3].data() + f[3].size(), points).ec != std::errc{}) {
            throw fail("bad point count '" + f[3] + "'");
        }
        std::optional<double> value;
        if (!f[2].empty()) {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(f[2].data(), f[2].data() + f[2].size(), v);
            if (ec != std::errc{} || ptr != f[2].data() + f[2].size()) throw fail("bad value '" + f[2] + "'");
            value = v;
        } else {
            t.notes.push_back(std::string(method_name(*method)) + " n=" + f[1] + ": not computed");
        }
        if (std::find(t.methods.begin(), t.methods.end(), *method) == t.methods.end()) t.methods.push_back(*method);
        if (std::find(t.horizons.begin(), t.horizons.end(), horizon) == t.horizons.end()) t.horizons.push_back(horizon);
        t.values[{*method, horizon}] = value;
        t.points[{*method, horizon}] = points;
    }
    return t;
}

void write_trace_csv(std::ostream& out, const CellReport& cell) {
    out << "date,actual,predicted\n";
    for (const auto& f : cell.folds) {
        for (const auto& tp : f.trace) {
            out << format_date(tp.date) << ',' << format_exact(tp.actual) << ',' << format_exact(tp.predicted)
                << '\n';
        }
    }
}

TraceChart chart_for_horizon(const EvalReport& report, int horizon, std::string title) {
    TraceChart chart;
    chart.title = std::move(title);
    for (Method m : report.methods) {
        const auto* cell = report.find(m, horizon);
        if (cell == nullptr || !cell->ok()) continue;
        const auto trace = cell->trace();
        if (chart.dates.empty()) {
            for (const auto& tp : trace) {
                chart.dates.push_back(tp.date);
                chart.actual.push_back(tp.actual);
            }
        } else if (trace.size() != chart.dates.size() ||
                   !std::equal(trace.begin(), trace.end(), chart.dates.begin(),
                               [](const TracePoint& tp, Date d) { return tp.date == d; })) {
            continue;
        }
        std::vector<double> predicted;
        predicted.reserve(trace.size());
        for (const auto& tp : trace) predicted.push_back(tp.predicted);
        chart.predicted.emplace_back(std::string(method_name(m)), std::move(predicted));
    }
    return chart;
}

}  // namespace stakecast
