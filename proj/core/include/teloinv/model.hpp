#pragma once

#include <complex>

#include "teloinv/initial_distribution.hpp"
#include "teloinv/precision.hpp"
#include "teloinv/shortening_law.hpp"

namespace teloinv {

/// Full model parameterization: division rate b, scaling N, shortening law g,
/// initial distribution n0. Every operation in the library reads this.
struct ModelConfig {
    double b = 1.0;
    double N = 40.0;
    ShorteningLaw law = ShorteningLaw::uniform(1.0);
    InitialDistribution n0 = InitialDistribution::gamma(9.0, 12.0);

    Moments law_moments() const { return moments(law); }
};

/// Drift/diffusion parameters of the approximating PDE:
/// mu = b m1, sigmaN2 = b m2 / N.
struct HeatKernelParams {
    double mu;
    double sigmaN2;
};

HeatKernelParams heat_kernel_params(const ModelConfig& config);

/// q_N(p) = b m1 p + (b m2 / 2N) p^2 — the change of Laplace variable
/// induced by the advection-diffusion generator.
Complex q_N(const ModelConfig& config, Complex p);

/// Same on the real axis at the current Real precision.
Real q_N_hp(const ModelConfig& config, const Real& p);

/// Spectral constants attached to a decay rate lambda:
///   lambda_N = lambda (1 - lambda m2 / (2 m1 N)),
///   C_N      = (b/2) [1 - L(g)(2 m1 lambda_N / (m2 lambda))],
///   beta_N   = N C_N if N <= b m1 lambda_N / C_N, else b m1 lambda_N.
struct SpectralConstants {
    Real lambda;
    Real lambda_N;
    Real C_N;
    Real beta_N;
};

SpectralConstants spectral_constants(const ModelConfig& config, double lambda);

/// Membership in the validity region of the link map: Re(p) > R(n0) and
/// Re(q_N(p)) > max(R(u_boundary), -(b m1)^2 2N / (b m2)).
bool in_P_N(const ModelConfig& config, Complex p, double R_n0, double R_u);

/// Envelope constants for a Gamma initial distribution:
///   C_lambda = sup_x |n0'''(x)| e^{lambda x},
///   D_lambda = sup_x |n0''(x)| e^{lambda x} / (1 - e^{-lambda' x}),
/// computed on a geometric grid refined until stable to 1e-6 relative.
struct EnvelopeConstants {
    double C_lambda;
    double D_lambda;
    double lambda;
    double lambda_prime;
};

EnvelopeConstants envelope_constants(const InitialDistribution& n0, double lambda,
                                     double lambda_prime);

/// Library default choice: lambda = beta/2 and
/// lambda' = min(lambda, (2 N m1/m2 - 2 lambda)/2).
EnvelopeConstants default_envelope_constants(const ModelConfig& config);

}  // namespace teloinv
