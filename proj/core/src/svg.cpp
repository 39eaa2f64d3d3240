#include "decentral/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "decentral/date.hpp"
#include "decentral/format.hpp"

namespace decentral {

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 480;
constexpr double kLeft = 80;
constexpr double kRight = 180;
constexpr double kTop = 40;
constexpr double kBottom = 60;

constexpr std::array<std::string_view, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                       "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) { return format_fixed(v, 2); }

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

// Roughly `count` round tick positions covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int count) {
    const double span = hi - lo;
    const double raw = span / count;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double step = (norm < 1.5 ? 1.0 : norm < 3.0 ? 2.0 : norm < 7.0 ? 5.0 : 10.0) * mag;
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) ticks.push_back(t);
    return ticks;
}

std::string tick_label(double v, bool is_date) {
    if (is_date) return format_date(Date{std::chrono::days{static_cast<long>(std::llround(v))}});
    if (std::abs(v) >= 1e5 || (std::abs(v) < 1e-3 && v != 0.0)) {
        std::ostringstream ss;
        ss.precision(3);
        ss << v;
        return ss.str();
    }
    std::string s = format_fixed(v, 3);
    while (s.find('.') != std::string::npos && (s.back() == '0' || s.back() == '.')) {
        const bool dot = s.back() == '.';
        s.pop_back();
        if (dot) break;
    }
    return s == "-0" ? "0" : s;
}

}  // namespace

std::string render_svg(const LineChart& chart, std::string_view comment) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : chart.series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
    if (ymax == ymin) ymin -= 0.5, ymax += 0.5;
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * plot_h; };

    std::ostringstream out;
    out << R"(<?xml version="1.0" encoding="UTF-8"?>)" << '\n';
    out << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << kWidth << R"(" height=")" << kHeight
        << R"(" viewBox="0 0 )" << kWidth << ' ' << kHeight << R"(" font-family="sans-serif" font-size="12">)" << '\n';
    if (!comment.empty()) {
        std::string c(comment);
        for (std::size_t pos; (pos = c.find("--")) != std::string::npos;) c.replace(pos, 2, "- -");
        out << "<!--\n" << c << "\n-->\n";
    }
    out << R"(<rect width="100%" height="100%" fill="white"/>)" << '\n';
    out << R"(<text x=")" << num(kLeft + plot_w / 2) << R"(" y="24" text-anchor="middle" font-size="15">)"
        << xml_escape(chart.title) << "</text>\n";

    // Axes and ticks.
    out << R"(<g stroke="black" fill="none">)" << '\n';
    out << R"(<rect x=")" << num(kLeft) << R"(" y=")" << num(kTop) << R"(" width=")" << num(plot_w) << R"(" height=")"
        << num(plot_h) << R"("/>)" << '\n';
    out << "</g>\n";
    for (double t : nice_ticks(xmin, xmax, chart.x_is_date ? 5 : 6)) {
        const double x = px(t);
        out << R"(<line x1=")" << num(x) << R"(" y1=")" << num(kTop + plot_h) << R"(" x2=")" << num(x) << R"(" y2=")"
            << num(kTop + plot_h + 5) << R"(" stroke="black"/>)" << '\n';
        out << R"(<text x=")" << num(x) << R"(" y=")" << num(kTop + plot_h + 20) << R"(" text-anchor="middle">)"
            << xml_escape(tick_label(t, chart.x_is_date)) << "</text>\n";
    }
    for (double t : nice_ticks(ymin, ymax, 6)) {
        const double y = py(t);
        out << R"(<line x1=")" << num(kLeft - 5) << R"(" y1=")" << num(y) << R"(" x2=")" << num(kLeft) << R"(" y2=")"
            << num(y) << R"(" stroke="black"/>)" << '\n';
        out << R"(<text x=")" << num(kLeft - 8) << R"(" y=")" << num(y + 4) << R"(" text-anchor="end">)"
            << xml_escape(tick_label(t, false)) << "</text>\n";
    }
    out << R"(<text x=")" << num(kLeft + plot_w / 2) << R"(" y=")" << num(kHeight - 15)
        << R"(" text-anchor="middle">)" << xml_escape(chart.x_label) << "</text>\n";
    out << R"(<text transform="translate(18 )" << num(kTop + plot_h / 2) << R"x() rotate(-90)" text-anchor="middle">)x"
        << xml_escape(chart.y_label) << "</text>\n";

    // Series.
    for (std::size_t s = 0; s < chart.series.size(); ++s) {
        const auto& series = chart.series[s];
        const std::string_view color = kPalette[s % kPalette.size()];
        std::string points;
        auto flush = [&] {
            if (!points.empty()) {
                out << R"(<polyline fill="none" stroke=")" << color << R"(" stroke-width="1.5" points=")" << points
                    << R"("/>)" << '\n';
                points.clear();
            }
        };
        for (std::size_t i = 0; i < series.x.size() && i < series.y.size(); ++i) {
            if (!std::isfinite(series.y[i]) || !std::isfinite(series.x[i])) {
                flush();
                continue;
            }
            if (!points.empty()) points.push_back(' ');
            points += num(px(series.x[i])) + "," + num(py(series.y[i]));
        }
        flush();
        const double ly = kTop + 10 + 18 * static_cast<double>(s);
        const double lx = kLeft + plot_w + 12;
        out << R"(<line x1=")" << num(lx) << R"(" y1=")" << num(ly) << R"(" x2=")" << num(lx + 20) << R"(" y2=")"
            << num(ly) << R"(" stroke=")" << color << R"(" stroke-width="2"/>)" << '\n';
        out << R"(<text x=")" << num(lx + 26) << R"(" y=")" << num(ly + 4) << R"(">)" << xml_escape(series.name)
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace decentral
