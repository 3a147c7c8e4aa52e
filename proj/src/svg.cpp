#include "avery/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace avery {

namespace {

constexpr double kWidth = 880.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 96.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 56.0;

std::string num(double value) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.3f", value);
    return buffer;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;
    double scale(double v, double out_lo, double out_hi) const {
        const double span = hi - lo;
        const double frac = span > 0.0 ? (v - lo) / span : 0.5;
        return out_lo + frac * (out_hi - out_lo);
    }
};

} // namespace

std::string render_svg(const SvgChart& chart) {
    Range x{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
    Range y{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
    for (const SvgSeries& series : chart.series) {
        for (const auto& [px, py] : series.points) {
            x.lo = std::min(x.lo, px);
            x.hi = std::max(x.hi, px);
            y.lo = std::min(y.lo, py);
            y.hi = std::max(y.hi, py);
        }
    }
    if (x.lo > x.hi) { x = {0.0, 1.0}; }
    if (y.lo > y.hi) { y = {0.0, 1.0}; }
    if (!std::isnan(chart.h_line)) {
        y.lo = std::min(y.lo, chart.h_line);
        y.hi = std::max(y.hi, chart.h_line);
    }
    if (!std::isnan(chart.y_min)) y.lo = chart.y_min;
    if (!std::isnan(chart.y_max)) y.hi = chart.y_max;
    if (x.hi == x.lo) x.hi = x.lo + 1.0;
    if (y.hi == y.lo) y.hi = y.lo + 1.0;
    // Headroom so strokes do not sit on the frame.
    const double pad = 0.04 * (y.hi - y.lo);
    y.lo -= pad;
    y.hi += pad;

    const double px_left = kMarginLeft;
    const double px_right = kWidth - kMarginRight;
    const double py_top = kMarginTop;
    const double py_bottom = kHeight - kMarginBottom;
    auto sx = [&](double v) { return x.scale(v, px_left, px_right); };
    auto sy = [&](double v) { return y.scale(v, py_bottom, py_top); };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
           "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " +
           num(kHeight) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(kWidth / 2) +
           "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
           chart.title + "</text>\n";

    // frame
    out += "<rect x=\"" + num(px_left) + "\" y=\"" + num(py_top) + "\" width=\"" +
           num(px_right - px_left) + "\" height=\"" + num(py_bottom - py_top) +
           "\" fill=\"none\" stroke=\"#444\"/>\n";

    // x ticks
    for (int k = 0; k <= 6; ++k) {
        const double v = x.lo + (x.hi - x.lo) * k / 6.0;
        const double px = sx(v);
        out += "<line x1=\"" + num(px) + "\" y1=\"" + num(py_bottom) + "\" x2=\"" + num(px) +
               "\" y2=\"" + num(py_bottom + 5) + "\" stroke=\"#444\"/>\n";
        out += "<text x=\"" + num(px) + "\" y=\"" + num(py_bottom + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               num(v) + "</text>\n";
    }
    out += "<text x=\"" + num((px_left + px_right) / 2) + "\" y=\"" + num(kHeight - 14) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           chart.x_label + "</text>\n";

    // y ticks
    if (chart.y_ticks.empty()) {
        for (int k = 0; k <= 5; ++k) {
            const double v = y.lo + (y.hi - y.lo) * k / 5.0;
            const double py = sy(v);
            out += "<line x1=\"" + num(px_left - 5) + "\" y1=\"" + num(py) + "\" x2=\"" +
                   num(px_left) + "\" y2=\"" + num(py) + "\" stroke=\"#444\"/>\n";
            out += "<text x=\"" + num(px_left - 9) + "\" y=\"" + num(py + 4) +
                   "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
                   num(v) + "</text>\n";
        }
    } else {
        for (const auto& [v, label] : chart.y_ticks) {
            const double py = sy(v);
            out += "<line x1=\"" + num(px_left - 5) + "\" y1=\"" + num(py) + "\" x2=\"" +
                   num(px_left) + "\" y2=\"" + num(py) + "\" stroke=\"#444\"/>\n";
            out += "<text x=\"" + num(px_left - 9) + "\" y=\"" + num(py + 4) +
                   "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
                   label + "</text>\n";
        }
    }
    out += "<text x=\"18\" y=\"" + num((py_top + py_bottom) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 " +
           num((py_top + py_bottom) / 2) + ")\">" + chart.y_label + "</text>\n";

    if (!std::isnan(chart.h_line)) {
        out += "<line x1=\"" + num(px_left) + "\" y1=\"" + num(sy(chart.h_line)) + "\" x2=\"" +
               num(px_right) + "\" y2=\"" + num(sy(chart.h_line)) +
               "\" stroke=\"#b22\" stroke-dasharray=\"6 4\"/>\n";
    }

    double legend_y = py_top + 14.0;
    for (const SvgSeries& series : chart.series) {
        if (series.scatter) {
            for (const auto& [px, py] : series.points) {
                out += "<circle cx=\"" + num(sx(px)) + "\" cy=\"" + num(sy(py)) +
                       "\" r=\"3.5\" fill=\"" + series.color + "\"/>\n";
            }
        } else if (!series.points.empty()) {
            std::string path = "M " + num(sx(series.points[0].first)) + " " +
                               num(sy(series.points[0].second));
            for (std::size_t i = 1; i < series.points.size(); ++i) {
                if (series.step) {
                    path += " L " + num(sx(series.points[i].first)) + " " +
                            num(sy(series.points[i - 1].second));
                }
                path += " L " + num(sx(series.points[i].first)) + " " +
                        num(sy(series.points[i].second));
            }
            out += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + series.color +
                   "\" stroke-width=\"1.6\"/>\n";
        }
        out += "<rect x=\"" + num(px_left + 10) + "\" y=\"" + num(legend_y - 9) +
               "\" width=\"12\" height=\"12\" fill=\"" + series.color + "\"/>\n";
        out += "<text x=\"" + num(px_left + 28) + "\" y=\"" + num(legend_y + 1) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + series.label + "</text>\n";
        legend_y += 17.0;
    }

    out += "</svg>\n";
    return out;
}

} // namespace avery
