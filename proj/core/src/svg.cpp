#include "stakecast/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

namespace stakecast {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char*, 6> kPalette = {"#222222", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const TraceChart& chart) {
    if (chart.dates.empty()) throw Error(ErrorCode::EmptyTrace, "nothing to plot");
    const std::size_t n = chart.dates.size();
    if (chart.actual.size() != n) throw Error(ErrorCode::LengthMismatch, "actual series length differs from dates");
    for (const auto& [label, values] : chart.predicted) {
        if (values.size() != n) throw Error(ErrorCode::LengthMismatch, label + " series length differs from dates");
    }

    double lo = *std::min_element(chart.actual.begin(), chart.actual.end());
    double hi = *std::max_element(chart.actual.begin(), chart.actual.end());
    for (const auto& [label, values] : chart.predicted) {
        lo = std::min(lo, *std::min_element(values.begin(), values.end()));
        hi = std::max(hi, *std::max_element(values.begin(), values.end()));
    }
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(hi))) {
        const double pad = std::max(1e-6, std::abs(hi) * 0.05);
        lo -= pad;
        hi += pad;
    }

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto x_at = [&](std::size_t i) {
        return n == 1 ? kLeft + plot_w / 2.0 : kLeft + plot_w * static_cast<double>(i) / static_cast<double>(n - 1);
    };
    auto y_at = [&](double v) { return kTop + plot_h * (hi - v) / (hi - lo); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!chart.title.empty()) {
        svg << "<text x=\"" << num(kLeft) << "\" y=\"22\" font-size=\"14\">" << escape(chart.title) << "</text>\n";
    }

    // Axes.
    svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\"" << num(kLeft + plot_w)
        << "\" y2=\"" << num(kTop + plot_h) << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft) << "\" y2=\""
        << num(kTop + plot_h) << "\" stroke=\"black\"/>\n";

    constexpr int kYTicks = 5;
    for (int k = 0; k <= kYTicks; ++k) {
        const double v = lo + (hi - lo) * k / kYTicks;
        const double y = y_at(v);
        svg << "<line x1=\"" << num(kLeft - 4) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft) << "\" y2=\""
            << num(y) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">"
            << tick_label(v) << "</text>\n";
    }
    std::vector<std::size_t> x_ticks = {0};
    if (n > 2) x_ticks.push_back((n - 1) / 2);
    if (n > 1) x_ticks.push_back(n - 1);
    for (std::size_t i : x_ticks) {
        const double x = x_at(i);
        svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\"" << num(x) << "\" y2=\""
            << num(kTop + plot_h + 4) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + plot_h + 18) << "\" text-anchor=\"middle\">"
            << format_date(chart.dates[i]) << "</text>\n";
    }
    svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 8)
        << "\" text-anchor=\"middle\">date</text>\n";
    svg << "<text x=\"16\" y=\"" << num(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << num(kTop + plot_h / 2) << ")\">value</text>\n";

    auto polyline = [&](const std::vector<double>& values, const char* colour, const std::string& label,
                        std::size_t slot) {
        svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < n; ++i) svg << (i ? " " : "") << num(x_at(i)) << ',' << num(y_at(values[i]));
        svg << "\"/>\n";
        const double ly = kTop + 14.0 * static_cast<double>(slot);
        const double lx = kLeft + plot_w + 12.0;
        svg << "<rect x=\"" << num(lx) << "\" y=\"" << num(ly - 8) << "\" width=\"12\" height=\"3\" fill=\"" << colour
            << "\"/>\n";
        svg << "<text x=\"" << num(lx + 18) << "\" y=\"" << num(ly - 3) << "\">" << escape(label) << "</text>\n";
    };
    polyline(chart.actual, kPalette[0], "actual", 0);
    for (std::size_t s = 0; s < chart.predicted.size(); ++s) {
        polyline(chart.predicted[s].second, kPalette[1 + s % (kPalette.size() - 1)], chart.predicted[s].first, s + 1);
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace stakecast
