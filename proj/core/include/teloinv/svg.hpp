#pragma once

#include <string>
#include <vector>

namespace teloinv {

// Minimal standalone SVG line chart: axes, tick labels, one polyline per
// series, and a small legend.  Good enough for eyeballing curves without
// pulling in a plotting dependency.
struct SvgSeries {
    std::string label;
    std::string color = "#1f6fb4";
    std::vector<double> x;
    std::vector<double> y;
};

struct SvgChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    int width = 720;
    int height = 480;
    std::vector<SvgSeries> series;

    void add(SvgSeries s) { series.push_back(std::move(s)); }
    std::string render() const;
    void write(const std::string& path) const;
};

}  // namespace teloinv
