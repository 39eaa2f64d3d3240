#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace decentral {

/// One polyline. NaN y values break the line.
struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct LineChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    /// x values are days since 1970-01-01 and ticks are printed as dates.
    bool x_is_date = false;
    std::vector<PlotSeries> series;
};

/// Static SVG document with axes, ticks, one polyline per series and a
/// legend. `comment` is embedded verbatim as an XML comment.
std::string render_svg(const LineChart& chart, std::string_view comment = {});

}  // namespace decentral
