#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "teloinv/precision.hpp"

namespace teloinv {

using Complex = std::complex<double>;

/// Initial telomere-length distribution n0 on the positive half-line.
///
/// Kinds: Gamma(ell, beta) (density beta^ell x^{ell-1} e^{-beta x}/Gamma(ell)),
/// Weibull(k, s), Nakagami(m, Omega), finite mixtures, a tabulated density,
/// and a Point mass (test-only, paired with the DegenerateTest shortening law).
class InitialDistribution {
  public:
    enum class Kind { Gamma, Weibull, Nakagami, Mixture, Tabulated, Point };

    static InitialDistribution gamma(double ell, double beta);
    static InitialDistribution weibull(double k, double scale);
    static InitialDistribution nakagami(double m, double omega);
    static InitialDistribution mixture(std::vector<double> weights,
                                       std::vector<InitialDistribution> components);
    static InitialDistribution tabulated(std::vector<double> x, std::vector<double> density);
    static InitialDistribution point(double x0);

    Kind kind() const { return kind_; }
    double param1() const { return p1_; }  ///< ell / k / m / x0
    double param2() const { return p2_; }  ///< beta / scale / Omega

    /// Density at x >= 0.
    double density(double x) const;

    /// n-th derivative of the density. Gamma uses the closed-form sum over
    /// the surviving polynomial terms; other kinds use central differences.
    double derivative(int order, double x) const;

    /// Laplace transform at complex p (closed form for Gamma and mixtures
    /// of Gammas; numeric quadrature otherwise). Throws AbscissaViolation
    /// for Re(p) <= abscissa.
    Complex laplace(Complex p) const;

    /// Laplace transform on the real axis at the current Real precision
    /// (Gamma and Gamma mixtures only).
    Real laplace_hp(const Real& p) const;

    /// Abscissa of convergence of the Laplace transform (metadata;
    /// -beta for Gamma, -infinity for lighter-than-exponential tails).
    double abscissa() const;

    /// Quantile by bisection on the numeric CDF.
    double quantile(double q) const;

    /// Mean of the distribution.
    double mean() const;

    /// Draw one sample using the given generator.
    double sample(class SplitMix64& rng) const;

    /// Check the density integrates to 1 within 1e-10 (NonNormalizedDensity).
    void validate() const;

    const std::vector<double>& mixture_weights() const { return weights_; }
    const std::vector<InitialDistribution>& mixture_components() const { return components_; }

  private:
    InitialDistribution() = default;

    Kind kind_ = Kind::Gamma;
    double p1_ = 1.0, p2_ = 1.0;
    std::vector<double> weights_;
    std::vector<InitialDistribution> components_;
    std::vector<double> tab_x_, tab_f_;
};

}  // namespace teloinv
