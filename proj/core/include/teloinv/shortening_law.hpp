#pragma once

#include <utility>
#include <vector>

#include "teloinv/precision.hpp"

namespace teloinv {

/// Law of the per-division shortening amount v on [0, delta].
///
/// Supported kinds:
///  - Uniform(delta): density 1/delta on [0, delta];
///  - Tabulated: density given on a uniform grid over [0, delta];
///  - DegenerateTest(v0): point mass at v0 (no density; admitted for
///    Monte Carlo unit tests where the hitting-time law is closed form).
struct ShorteningLaw {
    enum class Kind { Uniform, Tabulated, DegenerateTest };

    Kind kind = Kind::Uniform;
    double delta = 1.0;
    double v0 = 0.0;                 ///< point-mass location (DegenerateTest)
    std::vector<double> table;       ///< density values on a uniform v-grid (Tabulated)

    static ShorteningLaw uniform(double delta);
    static ShorteningLaw tabulated(double delta, std::vector<double> density_values);
    static ShorteningLaw degenerate(double v0);

    /// Density g(v); throws for DegenerateTest (no density exists).
    double density(double v) const;

    /// CDF G(v); defined for every kind.
    double cdf(double v) const;

    /// Validates normalization of the density to 1e-9 (NonNormalizedDensity).
    void validate() const;
};

/// First three moments m_i = E[v^i] of the shortening law.
struct Moments {
    Real m1, m2, m3;
};

/// Moments of the law: closed form for Uniform and DegenerateTest,
/// quadrature for Tabulated. Validates normalization first.
Moments moments(const ShorteningLaw& law);

/// Laplace transform of the density, L(g)(s) = E[e^{-s v}], at the current
/// Real precision. Closed form for Uniform/DegenerateTest.
Real law_laplace(const ShorteningLaw& law, const Real& s);

/// Weighted transform family used by the explicit cemetery formula:
/// returns (L(g * Id^j)(s), L((1-G) * Id^j)(s)) where Id^j is v^j.
/// Uniform/DegenerateTest use closed forms (stable moment recursion for the
/// incomplete exponential integral); Tabulated falls back to quadrature.
std::pair<Real, Real> law_transform_family(const ShorteningLaw& law, int j, const Real& s);

}  // namespace teloinv
