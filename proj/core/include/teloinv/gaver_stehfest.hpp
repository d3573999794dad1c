#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "teloinv/grid.hpp"
#include "teloinv/laplace.hpp"
#include "teloinv/model.hpp"
#include "teloinv/precision.hpp"

namespace teloinv {

/// Gaver-Stehfest inversion plan: order K, the 2K exact rational weights
///   V_n = ((-1)^{n+K}/K!) sum_j j^{K+1} C(K,j) C(2j,j) C(j,n-j),
/// and the decimal-precision contract under which sums are evaluated.
struct GSPlan {
    int K = 16;
    std::vector<BigRat> weights;  ///< V_1 .. V_{2K}
    PrecisionContext precision;
    unsigned weight_digits = 0;  ///< ceil(log10 max |V_n|) — the cancellation budget
};

GSPlan gs_weights(int K, PrecisionContext ctx);

/// Per-inversion diagnostics (catastrophic-cancellation detector).
struct GSDiagnostics {
    double max_partial_log10 = 0.0;  ///< log10 of the largest partial-sum magnitude
    bool precision_exhausted = false;
};

/// Precision policy for gs_invert.
///
/// Padded (default): the working precision is digits + weight_digits + 10,
/// so `digits` is a delivered-accuracy contract; the alternating weights'
/// cancellation is absorbed by guard digits.
/// Raw: sums run at exactly `digits` decimal digits, reproducing the
/// fixed-precision round-off behavior (used by the round-off experiment).
enum class GSPrecisionPolicy { Padded, Raw };

/// Invert L at x > 0: (ln 2 / x) sum_n V_n L(n ln2/x). The transform is
/// evaluated at the working precision implied by the policy; the result is
/// rounded to the contract precision. Flags PrecisionExhausted in the
/// diagnostics when the max partial sum exceeds 10^{working-10} |result|.
Real gs_invert(const std::function<Real(const Real&)>& L, const Real& x, const GSPlan& plan,
               GSDiagnostics* diag = nullptr,
               GSPrecisionPolicy policy = GSPrecisionPolicy::Padded);

/// An estimated density on an x-grid with provenance metadata.
struct EstimateCurve {
    enum class Id { GS_noise_free, GS_sampled, FirstOrder_old };

    std::vector<double> x;
    std::vector<double> values;
    Id estimator_id = Id::GS_noise_free;
    double N = 0;
    int K = 0;
    double alpha = 0;  ///< bandwidth (sampled estimators only)
    std::uint64_t seed = 0;
    unsigned digits = 0;
    bool precision_exhausted = false;  ///< any grid point tripped the detector

    double negative_mass() const { return negative_part_mass(x, values); }
    double mass() const { return trapezoid(x, values); }
};

/// Noise-free estimator: Gaver-Stehfest inversion of the link map applied
/// to the explicit cemetery transform (Gamma(ell, beta) initial data,
/// integer ell).
EstimateCurve estimate_n0_noise_free(const ModelConfig& config, int K,
                                     const std::vector<double>& x_grid, PrecisionContext ctx,
                                     GSPrecisionPolicy policy = GSPrecisionPolicy::Padded);

/// Sampled-data estimator: same inversion with the Gamma-kernel mixture
/// transform of the sample in place of the exact cemetery transform.
EstimateCurve estimate_n0_from_samples(const ModelConfig& config,
                                       const SenescenceSample& sample, int K, double alpha,
                                       const std::vector<double>& x_grid, PrecisionContext ctx,
                                       GSPrecisionPolicy policy = GSPrecisionPolicy::Padded);

/// First-order comparison estimator, deterministic input:
/// n0_old(x) = (1/(b m1)) n_d(x/(b m1)) with n_d interpolated from a series.
EstimateCurve estimate_n0_first_order(const ModelConfig& config, const CemeterySeries& series,
                                      const std::vector<double>& x_grid);

/// Same, with the closed-form time-domain cemetery density (Gamma data).
EstimateCurve estimate_n0_first_order(const ModelConfig& config,
                                      const CemeteryExplicit& cemetery,
                                      const std::vector<double>& x_grid);

/// Same, sampled input: rescaled log-transform KDE of the sample.
EstimateCurve estimate_n0_first_order(const ModelConfig& config,
                                      const SenescenceSample& sample, double alpha,
                                      const std::vector<double>& x_grid);

/// Guidance for choosing K from the sample size: larger samples tolerate
/// larger inversion orders before noise amplifies.
int suggest_K(std::size_t n_d);

}  // namespace teloinv
