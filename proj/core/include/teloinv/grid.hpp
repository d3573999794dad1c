#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace teloinv {

/// A function sampled on a uniform x-grid at a fixed time.
struct GridFunction {
    double time = 0.0;
    double h = 0.0;              ///< grid spacing
    std::vector<double> x;       ///< nodes, x[i] = i*h
    std::vector<double> values;  ///< one value per node

    /// Trapezoidal mass of the sampled function.
    double mass() const;

    /// Cubic (Catmull-Rom) interpolation with zero extension outside the grid.
    double interpolate(double xq) const;
};

/// Boundary-flux (senescence-time density) samples on a time grid.
struct CemeterySeries {
    std::vector<double> t;
    std::vector<double> flux;

    /// Trapezoidal cumulative mass up to the end of the series.
    double total_mass() const;

    /// Linear interpolation of the flux (0 outside the covered range).
    double interpolate(double tq) const;

    /// Cumulative mass at each stored time (trapezoid).
    std::vector<double> cumulative() const;
};

/// A seeded sample of senescence times.
struct SenescenceSample {
    std::vector<double> times;  ///< sorted ascending
    std::uint64_t seed = 0;
};

/// Trapezoidal integral of matched (x, y) samples.
double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

/// L1 distance between two curves sampled on the same grid.
double l1_distance(const std::vector<double>& x, const std::vector<double>& a,
                   const std::vector<double>& b);

/// Trapezoidal mass of the negative part of a sampled curve.
double negative_part_mass(const std::vector<double>& x, const std::vector<double>& y);

/// Total variation sum |y_{i+1} - y_i| of a sampled curve.
double total_variation(const std::vector<double>& y);

/// Uniform grid of n points on [lo, hi] (endpoints included).
std::vector<double> linspace(double lo, double hi, int n);

/// CSV helpers. Columns are comma-separated; an optional header comment
/// block ("# key=value" lines) precedes the column header.
void write_csv(const std::string& path, const std::vector<std::string>& comments,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

}  // namespace teloinv
