#pragma once

#include <string>
#include <vector>

#include "vortexdyn/vec2.hpp"

namespace vdyn {

struct PlotSeries {
    std::vector<Vec2> points;
    std::string label;
    std::string color{"#1f77b4"};
    bool markers{false};
};

struct PlotOptions {
    std::string title;
    std::string x_label{"x"};
    std::string y_label{"y"};
    bool log_x{false};
    bool log_y{false};
    bool equal_aspect{false};
    int width{640};
    int height{480};
};

/// Renders polyline series to a standalone SVG file. No display dependency;
/// log axes take log10 of the data (which must then be positive).
void write_svg_plot(const std::string& path, const std::vector<PlotSeries>& series,
                    const PlotOptions& options);

}  // namespace vdyn
