#pragma once

#include <functional>

#include "teloinv/forward_sim.hpp"
#include "teloinv/model.hpp"

namespace teloinv {

/// Finite-difference solve of the approximating advection-diffusion system
///   d/dt u = b m1 du/dx + (b m2 / 2N) d2u/dx2,   x > 0,
///   d/dt u(t,0) = b m1 du/dx(t,0)   (zero second derivative at the wall),
///   flux u_d(t) = b m1 u(t,0) + (b m2/2N) du/dx(t,0),
/// with a second-order one-sided advection stencil biased toward larger x
/// (the transport direction), centered diffusion, and RK4 in time.
/// Stability requires dt <= h^2 N / (b m2).
SolveResult solve_advection_diffusion(const ModelConfig& config, double x_max, double h,
                                      double dt, double T, int snapshot_stride = 16);

/// Drifted Gaussian fundamental solution
///   Psi_N(t,x) = sqrt(1/(2 pi sigmaN2 t)) exp(-(x + mu t)^2/(2 sigmaN2 t)).
double psi_kernel(const HeatKernelParams& params, double t, double x);

/// Explicit representation of the second spatial derivative of the solution:
///   t = 0: n0''(x);
///   t > 0: (n0'' * Psi)(x) - e^{-2 mu x / sigmaN2} (n0'' * Psi)(-x),
/// with (f * g)(z) = int_0^inf f(y) g(z - y) dy.
double second_derivative_explicit(const ModelConfig& config,
                                  const std::function<double(double)>& n0_dd, double t,
                                  double x);

/// Third derivative via the differentiated representation:
///   (n0''' * Psi)(x) + e^{-2 mu x/sigmaN2} [ (n0''' * Psi)(-x)
///                                            + (2 mu/sigmaN2)(n0'' * Psi)(-x) ].
double third_derivative_explicit(const ModelConfig& config,
                                 const std::function<double(double)>& n0_dd,
                                 const std::function<double(double)>& n0_ddd, double t,
                                 double x);

/// Both derivative-bound lemmas evaluated at one point: returns
/// (lhs2, rhs2, lhs3, rhs3) where lhs are the explicit derivatives and rhs
/// the exponential envelopes built from (lambda, lambda_N).
struct LemmaBounds {
    double lhs2, rhs2, lhs3, rhs3;
};

LemmaBounds lemma_bounds_check(const ModelConfig& config, const EnvelopeConstants& envelope,
                               double t, double x);

/// Constants of the error-bound theorem:
///   c1 = c2 = C_lambda b m3 / 6, c3 = D_lambda b m1 m3 / (3 m2),
///   c4 = D_lambda b m3 / 6.
struct TheoremBound {
    double c1, c2, c3, c4;
    SpectralConstants spectral;
    EnvelopeConstants envelope;
};

TheoremBound make_theorem_bound(const ModelConfig& config, const EnvelopeConstants& envelope);

/// The two right-hand sides of the theorem: bound_a(t,x) for the interior
/// error |n - u| and bound_b(t) for the flux error |n_d - u_d|.
struct BoundValues {
    double bound_a, bound_b;
};

BoundValues theorem_bound(const ModelConfig& config, const TheoremBound& bound, double t,
                          double x);

}  // namespace teloinv
