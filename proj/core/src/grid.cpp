#include "teloinv/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "teloinv/errors.hpp"

namespace teloinv {

double GridFunction::mass() const { return trapezoid(x, values); }

double GridFunction::interpolate(double xq) const {
    const auto n = static_cast<long>(values.size());
    if (n < 2 || xq < x.front() || xq > x.back()) return 0.0;
    const double u = (xq - x.front()) / h;
    long i = static_cast<long>(std::floor(u));
    i = std::clamp(i, 0L, n - 2);
    const double w = u - static_cast<double>(i);
    // Catmull-Rom with one-sided fallback at the ends.
    const double p1 = values[i], p2 = values[i + 1];
    const double p0 = (i > 0) ? values[i - 1] : 2 * p1 - p2;
    const double p3 = (i + 2 < n) ? values[i + 2] : 2 * p2 - p1;
    const double a = -0.5 * p0 + 1.5 * p1 - 1.5 * p2 + 0.5 * p3;
    const double b = p0 - 2.5 * p1 + 2.0 * p2 - 0.5 * p3;
    const double c = 0.5 * (p2 - p0);
    return ((a * w + b) * w + c) * w + p1;
}

double CemeterySeries::total_mass() const { return trapezoid(t, flux); }

double CemeterySeries::interpolate(double tq) const {
    if (t.empty() || tq < t.front() || tq > t.back()) return 0.0;
    auto it = std::upper_bound(t.begin(), t.end(), tq);
    auto i = static_cast<std::size_t>(it - t.begin());
    if (i == 0) return flux.front();
    if (i >= t.size()) return flux.back();
    const double w = (tq - t[i - 1]) / (t[i] - t[i - 1]);
    return (1 - w) * flux[i - 1] + w * flux[i];
}

std::vector<double> CemeterySeries::cumulative() const {
    std::vector<double> c(t.size(), 0.0);
    for (std::size_t i = 1; i < t.size(); ++i)
        c[i] = c[i - 1] + 0.5 * (flux[i] + flux[i - 1]) * (t[i] - t[i - 1]);
    return c;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw Error("trapezoid: size mismatch");
    double s = 0;
    for (std::size_t i = 1; i < x.size(); ++i)
        s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    return s;
}

double l1_distance(const std::vector<double>& x, const std::vector<double>& a,
                   const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() != x.size()) throw Error("l1_distance: size mismatch");
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = std::abs(a[i] - b[i]);
    return trapezoid(x, d);
}

double negative_part_mass(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> neg(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) neg[i] = std::max(0.0, -y[i]);
    return trapezoid(x, neg);
}

double total_variation(const std::vector<double>& y) {
    double s = 0;
    for (std::size_t i = 1; i < y.size(); ++i) s += std::abs(y[i] - y[i - 1]);
    return s;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    return out;
}

void write_csv(const std::string& path, const std::vector<std::string>& comments,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw Error("write_csv: cannot open " + path);
    out << std::setprecision(17);
    for (const auto& c : comments) out << "# " << c << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "\n");
    }
}

}  // namespace teloinv
