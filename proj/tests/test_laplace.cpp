#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "teloinv/bell.hpp"
#include "teloinv/forward_sim.hpp"
#include "teloinv/grid.hpp"
#include "teloinv/kde.hpp"
#include "teloinv/laplace.hpp"
#include "teloinv/precision.hpp"

using namespace teloinv;

TEST_CASE("binomial table") {
    const auto C = binomial_table<BigInt>(10);
    CHECK(C[5][2] == 10);
    CHECK(C[10][5] == 252);
    CHECK(C[7][0] == 1);
    CHECK(C[7][7] == 1);
}

TEST_CASE("partial Bell polynomials, known closed forms") {
    ScopedPrecision scope(50);
    const std::vector<Real> x = {Real(2), Real(3), Real(5), Real(7)};
    // B_{3,1} = x3, B_{3,2} = 3 x1 x2, B_{3,3} = x1^3.
    CHECK(abs(bell_partial(3, 1, x) - 5) < 1e-40);
    CHECK(abs(bell_partial(3, 2, x) - 3 * 2 * 3) < 1e-40);
    CHECK(abs(bell_partial(3, 3, x) - 8) < 1e-40);
    // B_{4,2} = 3 x2^2 + 4 x1 x3.
    CHECK(abs(bell_partial(4, 2, x) - (3 * 9 + 4 * 2 * 5)) < 1e-40);
    // Complete Bell: B_3 = x1^3 + 3 x1 x2 + x3.
    CHECK(abs(bell_complete(3, x) - (8 + 18 + 5)) < 1e-40);
    // Bell numbers from all-ones arguments: B_4 = 15, B_5 = 52.
    const std::vector<Real> ones(5, Real(1));
    CHECK(abs(bell_complete(4, ones) - 15) < 1e-40);
    CHECK(abs(bell_complete(5, ones) - 52) < 1e-40);
}

TEST_CASE("explicit senescence transform: frozen oracle values") {
    ScopedPrecision scope(50);
    const ModelConfig config;  // b=1, N=40, uniform(1), Gamma(9,12)
    const CemeteryExplicit cem = explicit_cemetery_laplace(config);
    CHECK(abs(cem.beta_tilde - Real("10.8848588484580976")) < 1e-15);
    CHECK(abs(cem.eval(Real("0.5")) - Real("0.485324608588681094")) < 1e-17);
    CHECK(abs(cem.eval(Real(1)) - Real("0.250891720665580794")) < 1e-17);
    CHECK(abs(cem.eval(Real(2)) - Real("0.0781517347936263490")) < 1e-17);
    for (const Real& a : cem.a) CHECK(a > 0);
}

TEST_CASE("transform mass at p=0 is exactly one") {
    ScopedPrecision scope(60);
    for (double ell : {9.0, 16.0, 25.0, 49.0}) {
        ModelConfig config;
        config.n0 = InitialDistribution::gamma(ell, ell + 3);
        const CemeteryExplicit cem = explicit_cemetery_laplace(config);
        CHECK(abs(cem.eval(Real(0)) - 1) < 1e-45);
    }
}

TEST_CASE("time-domain density is nonnegative and normalized") {
    ScopedPrecision scope(50);
    const ModelConfig config;
    const CemeteryExplicit cem = explicit_cemetery_laplace(config);
    const auto t = linspace(0.0, 12.0, 4001);
    std::vector<double> f(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        f[i] = static_cast<double>(cem.density(Real(t[i])));
        CHECK(f[i] >= 0.0);
    }
    CHECK(trapezoid(t, f) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("link prefactor") {
    ScopedPrecision scope(50);
    const ModelConfig config;
    CHECK(abs(link_prefactor(config, Real(0)) - 1) < 1e-45);
    // shift = (b m1)^2 2N / (b m2) = 60; q_N(1) = 1/2 + 1/240.
    const Real expected = 1 + Real(1) / 2 / (Real(60) + Real(1) / 2 + Real(1) / 240);
    CHECK(abs(link_prefactor(config, Real(1)) - expected) < 1e-40);
}

TEST_CASE("link map approximately inverts to the initial transform") {
    // L(n0)(p) ~= prefactor(p) L(n_d)(q_N(p)) with error O(1/N^2).
    ScopedPrecision scope(60);
    ModelConfig config;
    config.N = 40;
    const CemeteryExplicit cem = explicit_cemetery_laplace(config);
    const auto L_u = [&](const Real& q) { return cem.eval(q); };
    for (double p : {0.5, 1.0, 2.0, 4.0}) {
        const double linked = static_cast<double>(link_map(config, L_u, Real(p)));
        const double exact = static_cast<double>(config.n0.laplace_hp(Real(p)));
        CHECK(std::abs(linked - exact) < 5e-3);
    }
}

TEST_CASE("gamma mixture transform matches the closed form") {
    ScopedPrecision scope(50);
    const GammaKDE kde = make_gamma_kde({2.0}, 0.3);
    const Real p(1.5);
    const Real direct = pow(1 + p / Real(kde.beta_star[0]), Real(-kde.ell_star));
    CHECK(abs(gamma_mixture_laplace(kde, p) - direct) < 1e-40);

    // Two-point mixture averages the kernels.
    const GammaKDE kde2 = make_gamma_kde({1.0, 3.0}, 0.3);
    const Real v = gamma_mixture_laplace(kde2, p);
    const Real m0 = pow(1 + p / Real(kde2.beta_star[0]), Real(-kde2.ell_star));
    const Real m1 = pow(1 + p / Real(kde2.beta_star[1]), Real(-kde2.ell_star));
    CHECK(abs(v - (m0 + m1) / 2) < 1e-40);
}

TEST_CASE("empirical transform") {
    SenescenceSample sample;
    sample.times = {1.0, 2.0};
    const Complex v = empirical_laplace(sample, Complex(0.5, 0.0));
    CHECK(v.real() ==
          doctest::Approx(0.5 * (std::exp(-0.5) + std::exp(-1.0))).epsilon(1e-14));
    CHECK(empirical_laplace(sample, Complex(0.0, 0.0)).real() == doctest::Approx(1.0));
}

TEST_CASE("numeric transform of a sampled flux agrees with the closed form") {
    ScopedPrecision scope(50);
    const ModelConfig config;
    const CemeteryExplicit cem = explicit_cemetery_laplace(config);
    CemeterySeries series;
    for (double t = 0.0; t <= 14.0; t += 0.002) {
        series.t.push_back(t);
        series.flux.push_back(static_cast<double>(cem.density(Real(t))));
    }
    const Complex v = numeric_laplace(series, Complex(1.0, 0.0));
    CHECK(v.real() == doctest::Approx(0.250891720665580794).epsilon(1e-6));

    CemeterySeries truncated;
    truncated.t = {0.0, 0.1};
    truncated.flux = {series.flux[0], series.flux[50]};
    CHECK_THROWS_AS(numeric_laplace(truncated, Complex(1.0, 0.0)), InsufficientHorizon);
}
