// Release gates: one pass/fail line per criterion, exit nonzero on any
// failure. Each gate is self-contained and prints its measured numbers so
// a failure is diagnosable from the log alone.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "teloinv/approx_pde.hpp"
#include "teloinv/experiments.hpp"
#include "teloinv/forward_sim.hpp"
#include "teloinv/gaver_stehfest.hpp"
#include "teloinv/kde.hpp"
#include "teloinv/laplace.hpp"
#include "teloinv/precision.hpp"
#include "teloinv/rng.hpp"

using namespace teloinv;

namespace {

int g_failures = 0;

void gate(int id, const std::string& name, const std::function<bool(std::string&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2d %-28s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(), secs,
                detail.empty() ? "" : "  ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

// 1. Inverting L(s)=1/s returns the constant 1 to the delivered-precision
//    contract (relative error < 10^{-(digits-20)} at 200 digits).
bool gate_exactness(std::string& detail) {
    ScopedPrecision scope(200);
    const auto L = [](const Real& p) { return 1 / p; };
    Real worst(0);
    for (int K : {4, 16, 64}) {
        const GSPlan plan = gs_weights(K, PrecisionContext{200});
        for (double x : {0.5, 1.0, 3.0}) {
            const Real err = abs(gs_invert(L, Real(x), plan) - 1);
            if (err > worst) worst = err;
        }
    }
    detail = "max rel err " + worst.str(3);
    return worst < pow(Real(10), -180);
}

// 2. Recover exp(-x) from 1/(s+1) at K=16, 50 digits, rel err < 1e-6.
bool gate_accuracy(std::string& detail) {
    const auto L = [](const Real& p) { return 1 / (p + 1); };
    const GSPlan plan = gs_weights(16, PrecisionContext{50});
    double worst = 0.0;
    for (double x : {0.5, 1.0, 2.0}) {
        const double v = static_cast<double>(gs_invert(L, Real(x), plan));
        worst = std::max(worst, std::abs(v - std::exp(-x)) / std::exp(-x));
    }
    detail = "max rel err " + std::to_string(worst);
    return worst < 1e-6;
}

// 3. The explicit senescence transform matches a 1e5-lineage Monte Carlo
//    empirical transform within 3/sqrt(n_d) relative at p in {0.5, 1, 2}.
bool gate_mc_equivalence(std::string& detail) {
    ScopedPrecision scope(50);
    const ModelConfig config;  // b=1, uniform(1), N=40, Gamma(9,12)
    const CemeteryExplicit cem = explicit_cemetery_laplace(config);
    const std::size_t n_d = 100000;
    const SenescenceSample sample = sample_senescence_times(config, n_d, 314159);
    const double tol = 3.0 / std::sqrt(double(n_d));
    double worst = 0.0;
    for (double p : {0.5, 1.0, 2.0}) {
        const double exact = static_cast<double>(cem.eval(Real(p)));
        const double emp = empirical_laplace(sample, Complex(p, 0.0)).real();
        worst = std::max(worst, std::abs(emp - exact) / exact);
    }
    detail = "max rel gap " + std::to_string(worst) + " vs tol " + std::to_string(tol);
    return worst < tol;
}

// 4. Noise-free estimation, Gamma(25,30), N=40, K=250, 200 digits:
//    L1 error < 0.05 and below the first-order estimator's.
bool gate_noise_free(std::string& detail) {
    ModelConfig config;
    config.n0 = InitialDistribution::gamma(25, 30);
    const auto x = default_x_grid(config.n0);
    std::vector<double> truth;
    for (double xi : x) truth.push_back(config.n0.density(xi));

    const EstimateCurve gs =
        estimate_n0_noise_free(config, 250, x, PrecisionContext{200});
    ScopedPrecision scope(200);
    const CemeteryExplicit cem = explicit_cemetery_laplace(config);
    const EstimateCurve first = estimate_n0_first_order(config, cem, x);

    const double l1_gs = l1_distance(x, truth, gs.values);
    const double l1_first = l1_distance(x, truth, first.values);
    detail = "L1 inverted " + std::to_string(l1_gs) + ", first-order " +
             std::to_string(l1_first);
    return l1_gs < 0.05 && l1_gs < l1_first;
}

// 5. Convergence in N on Gamma(16,16): free-fit slope of the
//    second-order estimator in [-2.5,-1.5], of the first-order in [-1.4,-0.6].
bool gate_convergence(std::string& detail) {
    ExperimentSpec spec;
    spec.write_files = false;
    spec.K = 64;
    spec.digits = 50;
    const ConvergenceResult r = run_convergence(spec);
    detail = "slopes: inverted " + std::to_string(r.gs_free.slope) + ", first-order " +
             std::to_string(r.first_order_free.slope);
    return r.gs_free.slope >= -2.5 && r.gs_free.slope <= -1.5 &&
           r.first_order_free.slope >= -1.4 && r.first_order_free.slope <= -0.6;
}

// 6. Mass conservation of the jump-model solver, three configurations.
bool gate_conservation(std::string& detail) {
    struct Setup {
        double ell, beta, N, x_max, h, dt;
    };
    const std::vector<Setup> setups = {
        {9, 12, 10, 3.0, 0.005, 0.02},
        {16, 16, 20, 3.0, 0.005, 0.02},
        {25, 30, 40, 2.2, 0.004, 0.0125},
    };
    double worst = 0.0;
    for (const auto& s : setups) {
        ModelConfig config;
        config.N = s.N;
        config.n0 = InitialDistribution::gamma(s.ell, s.beta);
        const SolveResult r = solve_scaled_model(config, s.x_max, s.h, s.dt, -1.0);
        for (double c : r.conservation) worst = std::max(worst, c);
    }
    detail = "max |mass + absorbed - 1| = " + std::to_string(worst);
    return worst <= 1e-6;
}

// 7. Heat-kernel second-derivative representation: PDE residual < 1e-4
//    under finite differences, and exact zero at the wall.
bool gate_heat_kernel(std::string& detail) {
    const ModelConfig config;
    const HeatKernelParams hk = heat_kernel_params(config);
    const auto n0_dd = [&](double y) { return config.n0.derivative(2, y); };
    const auto w = [&](double t, double x) {
        return second_derivative_explicit(config, n0_dd, t, x);
    };
    double worst = 0.0;
    const double ht = 1e-4, hx = 1e-3;
    for (double t : {0.1, 0.5, 1.0}) {
        if (w(t, 0.0) != 0.0) {
            detail = "nonzero at the wall";
            return false;
        }
        for (double x : {0.3, 0.75, 1.2}) {
            // Fourth-order stencils: second-order ones leave an hx^2 w''''
            // term above the tolerance for this sharply peaked density.
            const double wt = (w(t - 2 * ht, x) - 8 * w(t - ht, x) +
                               8 * w(t + ht, x) - w(t + 2 * ht, x)) /
                              (12 * ht);
            const double wx = (w(t, x - 2 * hx) - 8 * w(t, x - hx) +
                               8 * w(t, x + hx) - w(t, x + 2 * hx)) /
                              (12 * hx);
            const double wxx = (-w(t, x + 2 * hx) + 16 * w(t, x + hx) -
                                30 * w(t, x) + 16 * w(t, x - hx) -
                                w(t, x - 2 * hx)) /
                               (12 * hx * hx);
            worst = std::max(worst, std::abs(wt - hk.mu * wx - 0.5 * hk.sigmaN2 * wxx));
        }
    }
    detail = "max PDE residual " + std::to_string(worst);
    return worst < 1e-4;
}

struct SolvePair {
    SolveResult n, u;
};

SolvePair solve_pair() {
    const ModelConfig config;  // N=40, Gamma(9,12)
    SolvePair pair;
    // Fine grids: at h = 0.004 the solvers' discretization errors push the
    // measured gap a few percent past the analytic bound where it is tight.
    pair.n = solve_scaled_model(config, 2.6, 0.002, 0.00625, 2.0, 16);
    pair.u = solve_advection_diffusion(config, 2.6, 0.002, 4e-5, 2.0, 2500);
    return pair;
}

const GridFunction* nearest(const std::vector<GridFunction>& snaps, double t) {
    const GridFunction* best = nullptr;
    for (const auto& s : snaps)
        if (!best || std::abs(s.time - t) < std::abs(best->time - t)) best = &s;
    return best;
}

// 8. The error-bound theorem dominates the measured solver gap on a
//    20x20 (t,x) grid.
bool gate_theorem_domination(std::string& detail) {
    const ModelConfig config;
    const EnvelopeConstants env = default_envelope_constants(config);
    const TheoremBound tb = make_theorem_bound(config, env);
    const SolvePair pair = solve_pair();

    const auto ts = linspace(0.1, 1.5, 20);
    const auto xs = linspace(0.02, 1.0, 20);
    double worst_ratio = 0.0;
    for (double t : ts) {
        const GridFunction* ns = nearest(pair.n.snapshots, t);
        const GridFunction* us = nearest(pair.u.snapshots, t);
        // The gap is measured at the snapshot time, so evaluate the (decaying)
        // bound there too rather than at the requested grid time.
        for (double x : xs) {
            const double gap = std::abs(ns->interpolate(x) - us->interpolate(x));
            const double bound = theorem_bound(config, tb, ns->time, x).bound_a;
            worst_ratio = std::max(worst_ratio, gap / bound);
        }
        const double flux_gap =
            std::abs(pair.n.cemetery.interpolate(t) - pair.u.cemetery.interpolate(t));
        const double bound_b = theorem_bound(config, tb, t, 0.0).bound_b;
        worst_ratio = std::max(worst_ratio, flux_gap / bound_b);
    }
    detail = "max gap/bound ratio " + std::to_string(worst_ratio);
    return worst_ratio <= 1.0;
}

// 9. Derivative-envelope lemmas hold on the same (t,x) grid.
bool gate_lemma_bounds(std::string& detail) {
    const ModelConfig config;
    const EnvelopeConstants env = default_envelope_constants(config);
    double worst = 0.0;
    for (double t : linspace(0.1, 1.5, 20))
        for (double x : linspace(0.02, 1.0, 20)) {
            const LemmaBounds lb = lemma_bounds_check(config, env, t, x);
            worst = std::max(worst, std::abs(lb.lhs2) / lb.rhs2);
            worst = std::max(worst, std::abs(lb.lhs3) / lb.rhs3);
        }
    detail = "max lhs/rhs ratio " + std::to_string(worst);
    return worst <= 1.0 + 1e-9;
}

// 10. Sampled-data estimation beats the first-order estimator in L1 for a
//     majority of 5 seeds (n_d=300, Gamma(25,30), sj bandwidth, K=22).
bool gate_noisy_improvement(std::string& detail) {
    ModelConfig config;
    config.n0 = InitialDistribution::gamma(25, 30);
    const auto x = default_x_grid(config.n0);
    std::vector<double> truth;
    for (double xi : x) truth.push_back(config.n0.density(xi));

    int wins = 0;
    double worst_gs = 0.0, worst_first = 0.0;
    for (std::uint64_t seed : {11u, 22u, 33u, 44u, 55u}) {
        const SenescenceSample sample = sample_senescence_times(config, 300, seed);
        std::vector<double> logs;
        for (double t : sample.times) logs.push_back(std::log(t));
        double alpha = bandwidth_sj(logs).alpha;
        alpha = std::min(alpha, 0.999 * std::sqrt(std::log(2.0)));

        const EstimateCurve gs =
            estimate_n0_from_samples(config, sample, 22, alpha, x, PrecisionContext{50});
        const EstimateCurve first = estimate_n0_first_order(config, sample, alpha, x);
        const double l1_gs = l1_distance(x, truth, gs.values);
        const double l1_first = l1_distance(x, truth, first.values);
        if (l1_gs <= l1_first) ++wins;
        worst_gs = std::max(worst_gs, l1_gs);
        worst_first = std::max(worst_first, l1_first);
    }
    detail = std::to_string(wins) + "/5 seeds improved (worst L1: inverted " +
             std::to_string(worst_gs) + ", first-order " + std::to_string(worst_first) +
             "); K=22 over-resolves the kernel-smoothed transform at these bandwidths";
    return wins >= 3;
}

// 11. Round-off dichotomy: identical inputs at K=36 oscillate at least
//     5x more (in excess total variation) at 16 digits than at 200.
bool gate_roundoff(std::string& detail) {
    ModelConfig config;  // Gamma(9,12)
    const auto x = default_x_grid(config.n0);
    std::vector<double> truth;
    for (double xi : x) truth.push_back(config.n0.density(xi));
    const double tv_truth = total_variation(truth);

    const SenescenceSample sample = sample_senescence_times(config, 300, 271828);
    std::vector<double> logs;
    for (double t : sample.times) logs.push_back(std::log(t));
    const double alpha =
        std::min(bandwidth_sj(logs).alpha, 0.999 * std::sqrt(std::log(2.0)));

    double tv[2];
    int i = 0;
    for (unsigned digits : {16u, 200u}) {
        const EstimateCurve est = estimate_n0_from_samples(
            config, sample, 36, alpha, x, PrecisionContext{digits}, GSPrecisionPolicy::Raw);
        tv[i++] = std::max(total_variation(est.values) - tv_truth, 0.0);
    }
    detail = "tv excess: 16d " + std::to_string(tv[0]) + ", 200d " + std::to_string(tv[1]);
    return tv[0] >= 5.0 * std::max(tv[1], 1e-12);
}

// 12. Small-variability degradation: negative-part mass of the estimate is
//     monotone nondecreasing as the coefficient of variation shrinks.
bool gate_small_variability(std::string& detail) {
    ExperimentSpec spec;
    spec.write_files = false;
    spec.K = 64;
    spec.digits = 200;
    const SmallVariabilityResult r = run_small_variability(spec);
    detail = "neg mass:";
    bool monotone = true;
    for (std::size_t i = 0; i < r.negative_mass.size(); ++i) {
        detail += " " + std::to_string(r.negative_mass[i]);
        if (i > 0 && r.negative_mass[i] < r.negative_mass[i - 1] - 1e-12)
            monotone = false;
    }
    return monotone;
}

// 13. Star Gamma-kernel mean and cv equal the log-normal's, 30 random (a, sigma).
bool gate_kernel_identities(std::string& detail) {
    SplitMix64 rng(6021023);
    std::uniform_real_distribution<double> ua(-1.0, 1.5);
    std::uniform_real_distribution<double> us(0.05, 0.8);
    double worst = 0.0;
    for (int i = 0; i < 30; ++i) {
        const double a = ua(rng), sigma = us(rng);
        const GammaKernelParams p =
            gamma_kernel_params(a, sigma, GammaKernelParams::Variant::Star);
        const double mean_gap =
            std::abs(p.ell_star / p.beta_star - std::exp(a + sigma * sigma / 2.0));
        const double cv2_gap =
            std::abs(1.0 / p.ell_star - (std::exp(sigma * sigma) - 1.0));
        worst = std::max({worst, mean_gap, cv2_gap});
    }
    detail = "max identity gap " + std::to_string(worst);
    return worst < 1e-12;
}

}  // namespace

int main() {
    gate(1, "inversion exactness", gate_exactness);
    gate(2, "inversion accuracy", gate_accuracy);
    gate(3, "transform vs Monte Carlo", gate_mc_equivalence);
    gate(4, "noise-free estimation", gate_noise_free);
    gate(5, "convergence rates", gate_convergence);
    gate(6, "mass conservation", gate_conservation);
    gate(7, "heat-kernel representation", gate_heat_kernel);
    gate(8, "theorem domination", gate_theorem_domination);
    gate(9, "lemma bounds", gate_lemma_bounds);
    gate(10, "noisy-data improvement", gate_noisy_improvement);
    gate(11, "round-off dichotomy", gate_roundoff);
    gate(12, "small-variability monotone", gate_small_variability);
    gate(13, "kernel-parameter identities", gate_kernel_identities);

    std::printf("%d/13 criteria passed\n", 13 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
