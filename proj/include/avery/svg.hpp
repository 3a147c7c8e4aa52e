#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace avery {

// Minimal self-contained SVG charts (presentation only; metrics never flow
// back from here). Deterministic output for identical inputs.

struct SvgSeries {
    std::string label;
    std::string color; // CSS color string
    std::vector<std::pair<double, double>> points;
    bool step = false;    // step-after interpolation (tier timelines)
    bool scatter = false; // markers only, no connecting line
};

struct SvgChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<SvgSeries> series;
    // Optional horizontal reference line (e.g. a threshold); skipped when NaN.
    double h_line = std::numeric_limits<double>::quiet_NaN();
    // Optional fixed y-range; auto-scaled when left NaN.
    double y_min = std::numeric_limits<double>::quiet_NaN();
    double y_max = std::numeric_limits<double>::quiet_NaN();
    // Optional y tick relabeling (value -> text), e.g. tier names.
    std::vector<std::pair<double, std::string>> y_ticks;
};

std::string render_svg(const SvgChart& chart);

} // namespace avery
