#pragma once

#include <string>
#include <utility>
#include <vector>

namespace powerwise::svg {

struct Series {
    std::string label;
    std::string color = "#1f77b4";
    std::vector<std::pair<double, double>> points;
    bool as_line = false;  // polyline through the points instead of markers
};

struct Band {
    std::string color = "#1f77b4";
    std::vector<double> x;
    std::vector<double> lower;
    std::vector<double> upper;
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Band> bands;
    std::vector<Series> series;
    bool invert_y = false;  // rank axes: 1 at the top
    int width = 720;
    int height = 480;
};

/// Scatter/line chart with axes, ticks and a legend. Output depends only on
/// the input (fixed-precision coordinates, no ids or timestamps).
std::string render(const Plot& plot);

struct Bar {
    std::string label;
    double value = 0.0;
    bool emphasized = false;  // drawn bold with a trailing asterisk
};

/// Horizontal bar chart, one row per bar in the given order.
std::string render_bars(const std::string& title, const std::vector<Bar>& bars, int width = 720);

std::string escape(const std::string& text);

}  // namespace powerwise::svg
