#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "teloinv/approx_pde.hpp"
#include "teloinv/laplace.hpp"
#include "teloinv/precision.hpp"
#include "teloinv/quadrature.hpp"

using namespace teloinv;

TEST_CASE("advection-diffusion solve conserves mass") {
    ModelConfig config;
    config.N = 10;
    const SolveResult r = solve_advection_diffusion(config, 3.0, 0.005, 2e-4, 6.0);
    REQUIRE(!r.conservation.empty());
    for (double c : r.conservation) CHECK(c <= 1e-6);
}

TEST_CASE("diffusion flux approximates the jump-model senescence density") {
    ModelConfig config;
    config.N = 10;
    const SolveResult r = solve_advection_diffusion(config, 3.0, 0.005, 2e-4, 6.0);
    ScopedPrecision scope(50);
    const CemeteryExplicit cem = explicit_cemetery_laplace(config);
    // O(1/N^2) model error at N=10 plus discretization.
    for (double t : {1.0, 2.0, 3.0}) {
        const double exact = static_cast<double>(cem.density(Real(t)));
        CHECK(std::abs(r.cemetery.interpolate(t) - exact) < 0.02);
    }
}

TEST_CASE("drifted Gaussian kernel normalizes and peaks at -mu t") {
    const ModelConfig config;
    const HeatKernelParams hk = heat_kernel_params(config);
    const double t = 0.5;
    const double mass = adaptive_simpson(
        [&](double x) { return psi_kernel(hk, t, x); }, -hk.mu * t - 1.0,
        -hk.mu * t + 1.0, 1e-12);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(psi_kernel(hk, t, -hk.mu * t) > psi_kernel(hk, t, -hk.mu * t + 0.05));
}

TEST_CASE("second-derivative representation vanishes at the wall") {
    const ModelConfig config;
    const auto n0_dd = [&](double y) { return config.n0.derivative(2, y); };
    for (double t : {0.1, 0.5, 1.0})
        CHECK(second_derivative_explicit(config, n0_dd, t, 0.0) == 0.0);
}

TEST_CASE("second-derivative representation satisfies the PDE") {
    const ModelConfig config;
    const HeatKernelParams hk = heat_kernel_params(config);
    const auto n0_dd = [&](double y) { return config.n0.derivative(2, y); };
    const auto w = [&](double t, double x) {
        return second_derivative_explicit(config, n0_dd, t, x);
    };
    // Fourth-order stencils: second-order ones leave an hx^2 w'''' term that
    // dwarfs the tolerance for this sharply peaked initial density.
    const double ht = 1e-4, hx = 1e-3;
    for (double t : {0.1, 0.5, 1.0}) {
        for (double x : {0.3, 0.75, 1.2}) {
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
            const double residual = wt - hk.mu * wx - 0.5 * hk.sigmaN2 * wxx;
            CHECK(std::abs(residual) < 1e-4);
        }
    }
}

TEST_CASE("representation reduces to n0'' at t -> 0") {
    const ModelConfig config;
    const auto n0_dd = [&](double y) { return config.n0.derivative(2, y); };
    for (double x : {0.5, 0.75, 1.0}) {
        const double v = second_derivative_explicit(config, n0_dd, 1e-5, x);
        CHECK(v == doctest::Approx(config.n0.derivative(2, x)).epsilon(1e-3));
    }
}

TEST_CASE("derivative-envelope lemmas hold on a grid") {
    const ModelConfig config;
    const EnvelopeConstants env = default_envelope_constants(config);
    for (double t : {0.05, 0.2, 0.5, 1.0, 2.0}) {
        for (double x : {0.05, 0.3, 0.75, 1.2, 1.8}) {
            const LemmaBounds lb = lemma_bounds_check(config, env, t, x);
            CHECK(std::abs(lb.lhs2) <= lb.rhs2 * (1 + 1e-9) + 1e-12);
            CHECK(std::abs(lb.lhs3) <= lb.rhs3 * (1 + 1e-9) + 1e-12);
        }
    }
}

TEST_CASE("theorem bound constants and positivity") {
    const ModelConfig config;
    const EnvelopeConstants env = default_envelope_constants(config);
    const TheoremBound tb = make_theorem_bound(config, env);
    const Moments m = config.law_moments();
    const double m1 = static_cast<double>(m.m1), m2 = static_cast<double>(m.m2),
                 m3 = static_cast<double>(m.m3);
    CHECK(tb.c1 == doctest::Approx(env.C_lambda * config.b * m3 / 6.0));
    CHECK(tb.c2 == doctest::Approx(tb.c1));
    CHECK(tb.c3 == doctest::Approx(env.D_lambda * config.b * m1 * m3 / (3.0 * m2)));
    CHECK(tb.c4 == doctest::Approx(env.D_lambda * config.b * m3 / 6.0));

    for (double t : {0.2, 1.0, 3.0}) {
        const BoundValues bv = theorem_bound(config, tb, t, 0.5);
        CHECK(bv.bound_a > 0.0);
        CHECK(bv.bound_b > 0.0);
    }
}

TEST_CASE("interior error bound dominates the measured gap at spot checks") {
    ModelConfig config;  // N=40
    // Fine grids: at h = 0.005 the two solvers' discretization errors are
    // comparable to the analytic bound at the outermost spot checks.
    const SolveResult n = solve_scaled_model(config, 2.5, 0.0025, 0.00625, 3.0);
    const SolveResult u = solve_advection_diffusion(config, 2.5, 0.0025, 6.25e-5, 3.0);
    const EnvelopeConstants env = default_envelope_constants(config);
    const TheoremBound tb = make_theorem_bound(config, env);

    for (double t : {1.0, 2.0}) {
        // Nearest snapshots to the target time in each solve.
        const GridFunction* ns = nullptr;
        const GridFunction* us = nullptr;
        for (const auto& s : n.snapshots)
            if (!ns || std::abs(s.time - t) < std::abs(ns->time - t)) ns = &s;
        for (const auto& s : u.snapshots)
            if (!us || std::abs(s.time - t) < std::abs(us->time - t)) us = &s;
        REQUIRE(ns);
        REQUIRE(us);
        for (double x : {0.2, 0.75, 1.5}) {
            const double gap = std::abs(ns->interpolate(x) - us->interpolate(x));
            const BoundValues bv = theorem_bound(config, tb, t, x);
            CHECK(gap <= bv.bound_a);
        }
    }
}
