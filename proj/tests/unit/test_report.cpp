#include <doctest.h>

#include "stakecast/errors.hpp"
#include "stakecast/report.hpp"
#include "stakecast/synth.hpp"

#include <regex>
#include <sstream>

using namespace stakecast;

namespace {

const Date kStart = Date{std::chrono::year{2021} / 9 / 14};

std::size_t count(const std::string& haystack, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
    return n;
}

EvalReport noisy_sweep(std::uint64_t seed, int horizons) {
    SynthSpec s;
    s.kind = SynthKind::Ar1;
    s.length = 200;
    s.level = 0.05;
    s.phi = 0.9;
    s.sigma = 0.001;
    s.seed = seed;
    const std::vector<Method> methods = {Method::Mwa, Method::Slr};
    return horizon_sweep(FeatureFrame(generate(s)), methods, horizons, SplitSettings{});
}

TraceChart chart_with(std::size_t points, std::size_t methods) {
    TraceChart c;
    for (std::size_t i = 0; i < points; ++i) {
        c.dates.push_back(kStart + std::chrono::days{static_cast<long>(i)});
        c.actual.push_back(0.05 + 0.001 * static_cast<double>(i));
    }
    for (std::size_t m = 0; m < methods; ++m) c.predicted.emplace_back("M" + std::to_string(m), c.actual);
    return c;
}

}  // namespace

TEST_CASE("table values show three decimals") {
    CHECK(format_table_value(0.0) == "0.000");
    CHECK(format_table_value(0.0534) == "0.053");
    CHECK(format_table_value(0.6105) == "0.611");
}

TEST_CASE("backtest table has one row per method and bolds the minimum") {
    const auto report = noisy_sweep(1, 1);
    const auto table = to_asset_table("ETH", report);
    const std::string md = render_backtest_markdown(table, 1);
    CHECK(md.find("| Method | RMSE/Mean | Points |") != std::string::npos);
    CHECK(md.find("| MWA | ") != std::string::npos);
    CHECK(md.find("| SLR | ") != std::string::npos);
    CHECK(count(md, "**") == 2);
    const Method best = *report.find(Method::Mwa, 1)->rmse_over_mean <= *report.find(Method::Slr, 1)->rmse_over_mean
                            ? Method::Mwa
                            : Method::Slr;
    CHECK(md.find("| " + std::string(method_name(best)) + " | **") != std::string::npos);
}

TEST_CASE("sweep table matches the horizon layout") {
    const auto a = to_asset_table("ETH", noisy_sweep(1, 7));
    const auto b = to_asset_table("SOL", noisy_sweep(2, 7));
    const std::vector<AssetTable> tables = {a, b};
    const std::string md = render_sweep_markdown(tables);
    CHECK(md.find("| N | ETH MWA | ETH SLR | SOL MWA | SOL SLR |") != std::string::npos);
    CHECK(md.find("|:-:|--:|--:|--:|--:|") != std::string::npos);
    const std::regex row(R"(\n\| ([1-7]) \|( [^|]+ \|){4})");
    CHECK(std::distance(std::sregex_iterator(md.begin(), md.end(), row), std::sregex_iterator()) == 7);
    // One bold cell per asset per row unless tied.
    CHECK(count(md, "**") >= 2 * 2 * 7);
}

TEST_CASE("failed cells render as dashes with notes") {
    SynthSpec s;
    s.length = 100;
    const std::vector<Method> methods = {Method::Mwa, Method::Slr};
    const auto report = horizon_sweep(FeatureFrame(generate(s)), methods, 3, SplitSettings{});
    const auto table = to_asset_table("XTZ", report);
    const std::vector<AssetTable> tables = {table};
    const std::string md = render_sweep_markdown(tables);
    CHECK(count(md, std::string(kMissingCell)) == 6);
    CHECK(md.find("NoFolds") != std::string::npos);
}

TEST_CASE("report csv round-trips values exactly") {
    for (std::uint64_t seed : {3u, 4u, 5u}) {
        const auto report = noisy_sweep(seed, 4);
        std::stringstream csv;
        write_report_csv(csv, report);
        CHECK(csv.str().rfind("method,horizon,rmse_over_mean,n_points\n", 0) == 0);
        const AssetTable back = read_report_csv(csv, "X");
        const AssetTable direct = to_asset_table("X", report);
        CHECK(back.values == direct.values);
        CHECK(back.points == direct.points);
        CHECK(back.methods == direct.methods);
        CHECK(render_sweep_markdown(std::span(&back, 1)) == render_sweep_markdown(std::span(&direct, 1)));
    }
    std::istringstream bad("method,horizon,rmse_over_mean,n_points\nmwa,x,0.1,3\n");
    CHECK_THROWS_AS(read_report_csv(bad, "X"), Error);
}

TEST_CASE("trace csv has one row per pooled point") {
    const auto report = noisy_sweep(7, 1);
    const auto* cell = report.find(Method::Slr, 1);
    std::ostringstream out;
    write_trace_csv(out, *cell);
    const std::string text = out.str();
    CHECK(text.rfind("date,actual,predicted\n", 0) == 0);
    CHECK(count(text, "\n") == cell->n_points + 1);
}

TEST_CASE("svg draws one polyline per series") {
    CHECK(count(render_svg(chart_with(2, 1)), "<polyline") == 2);
    CHECK(count(render_svg(chart_with(2, 2)), "<polyline") == 3);
    const std::string svg = render_svg(chart_with(40, 2));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("2021-09-14") != std::string::npos);
    CHECK(svg.find(">actual<") != std::string::npos);
    CHECK(count(render_svg(chart_with(1, 1)), "<polyline") == 2);

    try {
        (void)render_svg(TraceChart{});
        FAIL("expected EmptyTrace");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyTrace);
    }
    auto broken = chart_with(3, 1);
    broken.predicted[0].second.pop_back();
    CHECK_THROWS_AS((void)render_svg(broken), Error);
}

TEST_CASE("chart joins methods on trace dates") {
    const auto report = noisy_sweep(8, 2);
    const auto chart = chart_for_horizon(report, 2, "t");
    CHECK(chart.dates.size() == report.find(Method::Mwa, 2)->n_points);
    CHECK(chart.predicted.size() == 2);
    CHECK(count(render_svg(chart), "<polyline") == 3);
}
