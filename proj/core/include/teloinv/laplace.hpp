#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "teloinv/grid.hpp"
#include "teloinv/kde.hpp"
#include "teloinv/model.hpp"
#include "teloinv/precision.hpp"

namespace teloinv {

/// A Laplace transform as a value: real-axis high-precision evaluator,
/// abscissa of convergence (metadata, never detected numerically), and a
/// representation tag.
struct LaplaceFn {
    enum class Repr { ClosedGamma, CemeteryExplicit, GammaMixture, Empirical, NumericGrid };

    std::function<Real(const Real&)> eval;
    double abscissa = 0.0;
    Repr repr = Repr::NumericGrid;
};

/// Closed-form Laplace transform of the senescence-time density for Gamma
/// initial data: L(p) = sum_i a_i i! / (p + b m1 beta_tilde)^{i+1}.
struct CemeteryExplicit {
    std::vector<Real> a;  ///< a_0 .. a_{ell-1}, all positive
    Real beta_tilde;      ///< beta_tilde_N = (N/m1)(1 - L(g)(beta/N))
    Real bm1;             ///< b m1, so the pole sits at -bm1*beta_tilde

    /// Transform value at real p > -bm1*beta_tilde.
    Real eval(const Real& p) const;

    /// Time-domain density: n_d(t) = sum_i a_i t^i e^{-bm1 beta_tilde t}.
    Real density(const Real& t) const;

    LaplaceFn as_laplace_fn() const;
};

/// Assemble the explicit cemetery transform for n0 = Gamma(ell, beta) with
/// integer ell >= 1. Coefficients:
///   a_i = b beta^ell/(ell-1)! sum_{j=i}^{ell-1} C(ell-1,j) N^{-(ell-1-j)}
///         L((1-G) Id^{ell-1-j})(beta/N)
///         B_{j,i}[ b L(g Id)(beta/N), ..., b N^{-(j-1)} L(g Id^j)(beta/N) ].
/// All terms are positive, so the assembly is cancellation-free.
CemeteryExplicit explicit_cemetery_laplace(const ModelConfig& config);

/// The link between the two transforms: given L_u (transform of the
/// boundary flux of the approximating PDE),
///   L(n0)(p) ~= (1 + p b m1 / ((b m1)^2 2N/(b m2) + q_N(p))) L_u(q_N(p)).
/// Real-axis high-precision version.
Real link_map(const ModelConfig& config, const std::function<Real(const Real&)>& L_u,
              const Real& p);

/// Complex (double-precision) version; validates membership in the region
/// where the identity holds (throws OutsideP_N).
Complex link_map(const ModelConfig& config, const std::function<Complex(Complex)>& L_u,
                 Complex p, double R_n0, double R_u);

/// Link-map prefactor alone, on the real axis.
Real link_prefactor(const ModelConfig& config, const Real& p);

/// Laplace transform of the Gamma-kernel mixture:
/// (1/n) sum_i (1 + p/beta*_i)^{-ell*}, real axis, current precision.
Real gamma_mixture_laplace(const GammaKDE& kde, const Real& p);

/// Empirical transform of a sample: (1/n) sum_i e^{-p T_i}.
Complex empirical_laplace(const SenescenceSample& sample, Complex p);

/// Numeric transform of a sampled flux series: trapezoidal integral of
/// e^{-pt} flux(t) plus an exponential tail correction fitted to the decay
/// over the last covered decade. Requires cumulative mass >= 1 - 1e-4.
Complex numeric_laplace(const CemeterySeries& series, Complex p);

}  // namespace teloinv
