#include "vortexdyn/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vdyn {

namespace {

struct Mapper {
    double x_lo, x_hi, y_lo, y_hi;
    double px_lo, px_hi, py_lo, py_hi;  // py grows downward in SVG

    double x(double v) const { return px_lo + (v - x_lo) / (x_hi - x_lo) * (px_hi - px_lo); }
    double y(double v) const { return py_lo - (v - y_lo) / (y_hi - y_lo) * (py_lo - py_hi); }
};

std::string num(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

std::vector<double> ticks(double lo, double hi, int target = 6) {
    const double span = hi - lo;
    if (span <= 0.0) return {lo};
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    }
    std::vector<double> out;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step)
        out.push_back(v);
    return out;
}

}  // namespace

void write_svg_plot(const std::string& path, const std::vector<PlotSeries>& series,
                    const PlotOptions& opt) {
    std::vector<PlotSeries> data = series;
    for (PlotSeries& s : data) {
        for (Vec2& p : s.points) {
            if (opt.log_x) {
                if (p.x <= 0.0) throw std::invalid_argument("svg: log axis needs positive x");
                p.x = std::log10(p.x);
            }
            if (opt.log_y) {
                if (p.y <= 0.0) throw std::invalid_argument("svg: log axis needs positive y");
                p.y = std::log10(p.y);
            }
        }
    }

    double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
    for (const PlotSeries& s : data) {
        for (const Vec2& p : s.points) {
            x_lo = std::min(x_lo, p.x);
            x_hi = std::max(x_hi, p.x);
            y_lo = std::min(y_lo, p.y);
            y_hi = std::max(y_hi, p.y);
        }
    }
    if (x_lo > x_hi) {
        x_lo = y_lo = 0.0;
        x_hi = y_hi = 1.0;
    }
    const double pad_x = (x_hi - x_lo) * 0.06 + 1e-12;
    const double pad_y = (y_hi - y_lo) * 0.06 + 1e-12;
    x_lo -= pad_x;
    x_hi += pad_x;
    y_lo -= pad_y;
    y_hi += pad_y;

    if (opt.equal_aspect) {
        const double plot_w = opt.width - 140, plot_h = opt.height - 110;
        const double unit = std::max((x_hi - x_lo) / plot_w, (y_hi - y_lo) / plot_h);
        const double cx = 0.5 * (x_lo + x_hi), cy = 0.5 * (y_lo + y_hi);
        x_lo = cx - 0.5 * unit * plot_w;
        x_hi = cx + 0.5 * unit * plot_w;
        y_lo = cy - 0.5 * unit * plot_h;
        y_hi = cy + 0.5 * unit * plot_h;
    }

    const Mapper map{x_lo, x_hi, y_lo, y_hi, 70.0, double(opt.width) - 70.0,
                     double(opt.height) - 60.0, 50.0};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\""
        << opt.height << "\" viewBox=\"0 0 " << opt.width << " " << opt.height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << opt.width / 2 << "\" y=\"28\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << opt.title << "</text>\n";

    // Axes.
    svg << "<rect x=\"70\" y=\"50\" width=\"" << opt.width - 140 << "\" height=\""
        << opt.height - 110 << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (double t : ticks(x_lo, x_hi)) {
        const double px = map.x(t);
        svg << "<line x1=\"" << num(px) << "\" y1=\"" << opt.height - 60 << "\" x2=\"" << num(px)
            << "\" y2=\"" << opt.height - 55 << "\" stroke=\"#444\"/>\n";
        svg << "<text x=\"" << num(px) << "\" y=\"" << opt.height - 40
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << (opt.log_x ? "1e" + num(t) : num(t)) << "</text>\n";
    }
    for (double t : ticks(y_lo, y_hi)) {
        const double py = map.y(t);
        svg << "<line x1=\"65\" y1=\"" << num(py) << "\" x2=\"70\" y2=\"" << num(py)
            << "\" stroke=\"#444\"/>\n";
        svg << "<text x=\"60\" y=\"" << num(py + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << (opt.log_y ? "1e" + num(t) : num(t)) << "</text>\n";
    }
    svg << "<text x=\"" << opt.width / 2 << "\" y=\"" << opt.height - 14
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << opt.x_label
        << "</text>\n";
    svg << "<text x=\"20\" y=\"" << opt.height / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 20 " << opt.height / 2 << ")\">" << opt.y_label
        << "</text>\n";

    int legend_row = 0;
    for (const PlotSeries& s : data) {
        if (s.points.empty()) continue;
        svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (const Vec2& p : s.points) svg << num(map.x(p.x)) << "," << num(map.y(p.y)) << " ";
        svg << "\"/>\n";
        if (s.markers) {
            for (const Vec2& p : s.points)
                svg << "<circle cx=\"" << num(map.x(p.x)) << "\" cy=\"" << num(map.y(p.y))
                    << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
        }
        if (!s.label.empty()) {
            const int ly = 58 + 16 * legend_row++;
            svg << "<line x1=\"" << opt.width - 160 << "\" y1=\"" << ly << "\" x2=\""
                << opt.width - 140 << "\" y2=\"" << ly << "\" stroke=\"" << s.color
                << "\" stroke-width=\"2\"/>\n";
            svg << "<text x=\"" << opt.width - 134 << "\" y=\"" << ly + 4
                << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
        }
    }
    svg << "</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("svg: cannot write " + path);
    out << svg.str();
}

}  // namespace vdyn
