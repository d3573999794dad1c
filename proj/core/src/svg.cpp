#include "teloinv/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "teloinv/errors.hpp"

namespace teloinv {

namespace {

constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 55;

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(4) << v;
    return os.str();
}

std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
    std::vector<double> ticks;
    if (!(hi > lo)) return {lo};
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * m >= raw) { step = mag * m; break; }
    }
    for (double t = std::ceil(lo / step) * step; t <= hi + 0.5 * step; t += step)
        ticks.push_back(t);
    return ticks;
}

}  // namespace

std::string SvgChart::render() const {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    auto tx = [&](double v) { return log_x ? std::log10(v) : v; };
    auto ty = [&](double v) { return log_y ? std::log10(v) : v; };
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double xv = tx(s.x[i]), yv = ty(s.y[i]);
            if (!std::isfinite(xv) || !std::isfinite(yv)) continue;
            xmin = std::min(xmin, xv); xmax = std::max(xmax, xv);
            ymin = std::min(ymin, yv); ymax = std::max(ymax, yv);
        }
    }
    if (!std::isfinite(xmin) || !std::isfinite(ymin)) { xmin = 0; xmax = 1; ymin = 0; ymax = 1; }
    if (xmax == xmin) { xmax = xmin + 1; }
    if (ymax == ymin) { ymax = ymin + 1; }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad; ymax += ypad;

    const double pw = width - kMarginLeft - kMarginRight;
    const double ph = height - kMarginTop - kMarginBottom;
    auto px = [&](double v) { return kMarginLeft + pw * (tx(v) - xmin) / (xmax - xmin); };
    auto py = [&](double v) { return kMarginTop + ph * (1.0 - (ty(v) - ymin) / (ymax - ymin)); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

    // Axes and ticks in transformed coordinates.
    for (double t : nice_ticks(xmin, xmax)) {
        const double x = kMarginLeft + pw * (t - xmin) / (xmax - xmin);
        os << "<line x1=\"" << x << "\" y1=\"" << kMarginTop << "\" x2=\"" << x
           << "\" y2=\"" << kMarginTop + ph << "\" stroke=\"#e0e0e0\"/>\n"
           << "<text x=\"" << x << "\" y=\"" << kMarginTop + ph + 18
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
           << (log_x ? "1e" + fmt(t) : fmt(t)) << "</text>\n";
    }
    for (double t : nice_ticks(ymin, ymax)) {
        const double y = kMarginTop + ph * (1.0 - (t - ymin) / (ymax - ymin));
        os << "<line x1=\"" << kMarginLeft << "\" y1=\"" << y << "\" x2=\""
           << kMarginLeft + pw << "\" y2=\"" << y << "\" stroke=\"#e0e0e0\"/>\n"
           << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << y + 4
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
           << (log_y ? "1e" + fmt(t) : fmt(t)) << "</text>\n";
    }
    os << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << pw
       << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n"
       << "<text x=\"" << kMarginLeft + pw / 2 << "\" y=\"" << height - 12
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
       << x_label << "</text>\n"
       << "<text x=\"16\" y=\"" << kMarginTop + ph / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
          "transform=\"rotate(-90 16 " << kMarginTop + ph / 2 << ")\">" << y_label << "</text>\n";

    for (const auto& s : series) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double xv = tx(s.x[i]), yv = ty(s.y[i]);
            if (!std::isfinite(xv) || !std::isfinite(yv)) continue;
            os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        }
        os << "\"/>\n";
    }

    double ly = kMarginTop + 10;
    for (const auto& s : series) {
        os << "<line x1=\"" << kMarginLeft + pw - 150 << "\" y1=\"" << ly << "\" x2=\""
           << kMarginLeft + pw - 125 << "\" y2=\"" << ly << "\" stroke=\"" << s.color
           << "\" stroke-width=\"2\"/>\n"
           << "<text x=\"" << kMarginLeft + pw - 118 << "\" y=\"" << ly + 4
           << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
        ly += 16;
    }
    os << "</svg>\n";
    return os.str();
}

void SvgChart::write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot write SVG file: " + path);
    out << render();
}

}  // namespace teloinv
