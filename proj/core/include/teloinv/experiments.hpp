#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "teloinv/gaver_stehfest.hpp"
#include "teloinv/model.hpp"

namespace teloinv {

/// What an experiment subcommand needs to run: the model, an output
/// directory, a seed, the precision contract, and optional overrides.
struct ExperimentSpec {
    ModelConfig config;
    std::string out_dir = ".";
    std::uint64_t seed = 20240801;
    unsigned digits = 200;
    int K = 0;              ///< 0 = experiment default
    std::size_t n_d = 0;    ///< 0 = experiment default (sampled experiments)
    std::string bandwidth;  ///< "", "nrd", "sj", or a numeric literal
    bool write_files = true;
};

/// Log-log power-law fit of errors against N. For the constrained fit the
/// model is err ~= C / N^slope (slope is the positive decay exponent); the
/// free fit reports the signed least-squares slope d(log err)/d(log N),
/// which is negative for decaying errors.
struct FitResult {
    double slope = 0.0;      ///< the (fixed or fitted) exponent
    double C = 0.0;          ///< positive prefactor
    int points_used = 0;     ///< tail points entering the fit
    double residual = 0.0;   ///< RMS residual in log space
};

/// Constrained fit: slope given, log C = mean(log err_i + slope log N_i)
/// over the last ceil(k/3) points. Throws InsufficientPoints below 3.
FitResult fit_constrained(const std::vector<double>& errors, const std::vector<double>& Ns,
                          double slope);

/// Unconstrained least-squares line in log-log space over the same tail.
FitResult fit_free(const std::vector<double>& errors, const std::vector<double>& Ns);

/// key=value manifest writer (one pair per line).
void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries);

/// One estimated case: truth plus both estimators on a shared grid.
struct CaseResult {
    std::string label;
    std::vector<double> x;
    std::vector<double> truth;
    EstimateCurve gs;
    EstimateCurve first_order;
    double l1_gs = 0.0;
    double l1_first_order = 0.0;
};

/// Default evaluation grid: 200 uniform points on
/// [0, 1.2 * (0.999-quantile of the truth)].
std::vector<double> default_x_grid(const InitialDistribution& n0, int points = 200);

/// Count of well-separated local maxima of a sampled curve (modes above
/// 5% of the global maximum).
int count_modes(const std::vector<double>& values);

/// Noise-free estimation for the four reference Gamma initial laws at
/// N = 40 (K default 250).
struct NoiseFreeResult {
    std::vector<CaseResult> cases;
};
NoiseFreeResult run_noise_free(const ExperimentSpec& spec);

/// L1 error vs N for both estimators on Gamma(16,16); constrained fits
/// (slopes 1 and 2) and free fits over the last third of N values.
struct ConvergenceResult {
    std::vector<double> Ns;
    std::vector<double> err_gs;
    std::vector<double> err_first_order;
    FitResult gs_constrained;           ///< slope fixed at 2
    FitResult first_order_constrained;  ///< slope fixed at 1
    FitResult gs_free;
    FitResult first_order_free;
};
ConvergenceResult run_convergence(const ExperimentSpec& spec);

/// Estimation for four concentrated Gamma laws; reports coefficient of
/// variation, negative-part mass, and mode-location error per case.
struct SmallVariabilityResult {
    std::vector<CaseResult> cases;
    std::vector<double> cv;
    std::vector<double> negative_mass;
    std::vector<double> mode_error;
};
SmallVariabilityResult run_small_variability(const ExperimentSpec& spec);

/// Sampled-data estimation: the reference Gammas at n_d in {30, 300, 3000}
/// plus the alternative initial laws at n_d = 300.
struct NoisyCase {
    CaseResult result;
    std::size_t n_d = 0;
    double alpha = 0.0;
    std::string bandwidth_method;
    bool bandwidth_fallback = false;
    int modes_gs = 0;
    int modes_truth = 0;
};
struct NoisyResult {
    std::vector<NoisyCase> cases;
};
NoisyResult run_noisy(const ExperimentSpec& spec);

/// Gamma-kernel vs log-normal-kernel comparison at a = log 2,
/// alpha in {0.2, 0.4}: Laplace-transform gaps on p in [0, 10] and
/// density overlays for the three parameter maps.
struct KernelCompareCase {
    std::string variant;
    double alpha = 0.0;
    double max_abs_gap = 0.0;  ///< max |L_gamma - L_lognormal| on [0, 10]
    double max_rel_gap = 0.0;
};
struct KernelCompareResult {
    std::vector<KernelCompareCase> cases;
};
KernelCompareResult run_kernel_compare(const ExperimentSpec& spec);

/// Rasterization of the link-map validity region
/// {p : Re p > alpha_r, Re q_N(p) > beta_r} over a complex-plane window.
struct LaplaceSetResult {
    double alpha_r = 0.0, beta_r = 0.0;
    std::vector<double> re, im;     ///< grid axes
    std::vector<std::uint8_t> in;   ///< row-major membership mask
    bool symmetric = true;          ///< mask symmetric about the real axis
    bool contains_vertical_line = false;  ///< some {Re p = c} fully inside
};
std::vector<LaplaceSetResult> run_laplace_set(const ExperimentSpec& spec);

/// Fixed-precision round-off demonstration: sampled estimation at K = 36
/// under 16 and 200 decimal digits with the Raw precision policy.
struct RoundoffCase {
    std::string label;
    unsigned digits = 0;
    double tv_excess = 0.0;  ///< total variation of estimate minus truth's
    double negative_mass = 0.0;
    bool precision_exhausted = false;
};
struct RoundoffResult {
    std::vector<RoundoffCase> cases;
};
RoundoffResult run_roundoff(const ExperimentSpec& spec);

}  // namespace teloinv
