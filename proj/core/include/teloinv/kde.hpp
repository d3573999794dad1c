#pragma once

#include <vector>

#include "teloinv/grid.hpp"

namespace teloinv {

/// Parameters of one Gamma kernel matched to a log-normal(a, sigma) kernel.
///
/// Variants:
///   Star:       ell* = 1/(e^{sigma^2}-1),  beta* = e^{-a-sigma^2/2} ell*
///               (same mean and coefficient of variation as the log-normal);
///   DoubleStar: (ell*, e^{-a} ell*);
///   TripleStar: (ell*, e^{-a} (ell*-1)).
struct GammaKernelParams {
    enum class Variant { Star, DoubleStar, TripleStar };
    double ell_star;
    double beta_star;
    Variant variant;
};

GammaKernelParams gamma_kernel_params(double a, double sigma,
                                      GammaKernelParams::Variant variant);

/// Gamma-kernel density estimator: a mixture of Gamma(ell*, beta*_i)
/// densities, one per observation, sharing the bandwidth alpha.
struct GammaKDE {
    double alpha;
    double ell_star;
    std::vector<double> beta_star;  ///< one rate per observation
    std::vector<double> times;      ///< the underlying sample
};

/// Build the Gamma-kernel estimator from a sample (Star variant by default).
GammaKDE make_gamma_kde(const std::vector<double>& times, double alpha,
                        GammaKernelParams::Variant variant = GammaKernelParams::Variant::Star);

/// Mixture density value at t >= 0.
double gamma_kde_eval(const GammaKDE& kde, double t);

/// Log-transform Gaussian kernel estimator:
/// (1/n) sum_i 1/(t alpha) rho(log(t/T_i)/alpha), rho standard normal density.
double log_kde_eval(const std::vector<double>& times, double alpha, double t);

/// Bandwidth selection on log-transformed data.
struct BandwidthResult {
    double alpha;
    bool clipped = false;   ///< clipped into (0, sqrt(log 2))
    bool fallback = false;  ///< SJ fixed-point had no root; nrd was used
};

/// Silverman's rule: 0.9 min(sd, IQR/1.34) n^{-1/5}.
BandwidthResult bandwidth_nrd(const std::vector<double>& log_sample);

/// Sheather-Jones solve-the-equation plug-in, root found by bisection on
/// [1e-4, 10 * nrd]; falls back to nrd (with a flag) when no root exists.
BandwidthResult bandwidth_sj(const std::vector<double>& log_sample);

}  // namespace teloinv
