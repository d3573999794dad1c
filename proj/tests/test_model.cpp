#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "teloinv/errors.hpp"
#include "teloinv/model.hpp"
#include "teloinv/precision.hpp"
#include "teloinv/quadrature.hpp"
#include "teloinv/rng.hpp"
#include "teloinv/shortening_law.hpp"

using namespace teloinv;

TEST_CASE("uniform shortening law moments") {
    ScopedPrecision scope(50);
    const Moments m = moments(ShorteningLaw::uniform(1.0));
    CHECK(abs(m.m1 - Real(1) / 2) < 1e-40);
    CHECK(abs(m.m2 - Real(1) / 3) < 1e-40);
    CHECK(abs(m.m3 - Real(1) / 4) < 1e-40);

    const Moments md = moments(ShorteningLaw::uniform(2.0));
    CHECK(abs(md.m1 - Real(1)) < 1e-40);
    CHECK(abs(md.m2 - Real(4) / 3) < 1e-40);
}

TEST_CASE("uniform law transform values") {
    ScopedPrecision scope(50);
    const auto law = ShorteningLaw::uniform(1.0);
    // L(g)(s) = (1 - e^{-s})/s for the uniform density on (0,1).
    const Real s(2);
    const Real expected = (1 - exp(-s)) / s;
    CHECK(abs(law_laplace(law, s) - expected) < 1e-45);
    CHECK(abs(law_laplace(law, Real(0)) - 1) < 1e-45);

    // Oracle-frozen weighted transforms at s = 2.
    const auto [gid, surv] = law_transform_family(law, 1, Real(2));
    CHECK(abs(gid - Real("0.148498537572540481")) < 1e-17);
    CHECK(abs(surv - Real("0.0676676416183063459")) < 1e-17);
}

TEST_CASE("transform family matches direct quadrature") {
    ScopedPrecision scope(50);
    const auto law = ShorteningLaw::uniform(1.0);
    for (int j : {0, 1, 2, 3}) {
        const double s = 0.3;
        const auto [gid, surv] = law_transform_family(law, j, Real(s));
        const double gid_q = adaptive_simpson(
            [&](double v) { return std::pow(v, j) * std::exp(-s * v); }, 0.0, 1.0, 1e-13);
        const double surv_q = adaptive_simpson(
            [&](double v) { return std::pow(v, j) * (1.0 - v) * std::exp(-s * v); }, 0.0,
            1.0, 1e-13);
        CHECK(std::abs(static_cast<double>(gid) - gid_q) < 1e-11);
        CHECK(std::abs(static_cast<double>(surv) - surv_q) < 1e-11);
    }
}

TEST_CASE("variable change q_N") {
    const ModelConfig config;  // b=1, N=40, uniform(1)
    const Complex q = q_N(config, Complex(1.0, 0.0));
    CHECK(q.real() == doctest::Approx(0.5 + 1.0 / 240.0).epsilon(1e-14));
    CHECK(q.imag() == doctest::Approx(0.0));

    // Conjugate symmetry.
    const Complex p(0.7, 1.3);
    const Complex a = q_N(config, p), b = q_N(config, std::conj(p));
    CHECK(a.real() == doctest::Approx(b.real()));
    CHECK(a.imag() == doctest::Approx(-b.imag()));

    ScopedPrecision scope(50);
    CHECK(abs(q_N_hp(config, Real(1)) - (Real(1) / 2 + Real(1) / 240)) < 1e-45);
}

TEST_CASE("spectral constants at lambda=1") {
    ScopedPrecision scope(50);
    const ModelConfig config;
    const SpectralConstants sc = spectral_constants(config, 1.0);
    CHECK(abs(sc.lambda_N - Real(119) / 120) < 1e-45);
    // Oracle-frozen C_N for (b=1, N=40, uniform(1), lambda=1).
    CHECK(abs(sc.C_N - Real("0.340512173782210823")) < 1e-17);
    // N=40 <= b m1 lambda_N / C_N ~ 1.456 is false, so beta_N = b m1 lambda_N.
    CHECK(abs(sc.beta_N - Real(1) / 2 * Real(119) / 120) < 1e-40);
}

TEST_CASE("heat kernel parameters") {
    const ModelConfig config;
    const HeatKernelParams hk = heat_kernel_params(config);
    CHECK(hk.mu == doctest::Approx(0.5));
    CHECK(hk.sigmaN2 == doctest::Approx(1.0 / 120.0));
}

TEST_CASE("validity region membership") {
    const ModelConfig config;
    CHECK(in_P_N(config, Complex(1.0, 0.0), 0.0, 0.0));
    CHECK_FALSE(in_P_N(config, Complex(-1.0, 0.0), 0.0, 0.0));
    // Large imaginary part drives Re q_N below any fixed threshold.
    CHECK_FALSE(in_P_N(config, Complex(1.0, 100.0), 0.0, 0.0));
}

TEST_CASE("gamma initial distribution basics") {
    const auto n0 = InitialDistribution::gamma(9, 12);
    const double mass =
        adaptive_simpson([&](double x) { return n0.density(x); }, 0.0, 5.0, 1e-12);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(n0.mean() == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(n0.abscissa() == doctest::Approx(-12.0));
    CHECK(n0.quantile(0.5) < n0.quantile(0.9));
    // Laplace at 0 is total mass.
    CHECK(n0.laplace(Complex(0.0, 0.0)).real() == doctest::Approx(1.0).epsilon(1e-12));
    // Closed form (1 + p/beta)^{-ell} at p = 3.
    CHECK(n0.laplace(Complex(3.0, 0.0)).real() ==
          doctest::Approx(std::pow(1.25, -9.0)).epsilon(1e-12));
}

TEST_CASE("gamma derivatives match finite differences") {
    const auto n0 = InitialDistribution::gamma(9, 12);
    const double h = 1e-5;
    for (double x : {0.3, 0.75, 1.2}) {
        const double fd2 =
            (n0.density(x + h) - 2 * n0.density(x) + n0.density(x - h)) / (h * h);
        CHECK(n0.derivative(2, x) == doctest::Approx(fd2).epsilon(1e-5));
        const double fd3 = (n0.derivative(2, x + h) - n0.derivative(2, x - h)) / (2 * h);
        CHECK(n0.derivative(3, x) == doctest::Approx(fd3).epsilon(1e-5));
    }
}

TEST_CASE("weibull, nakagami, and mixture densities normalize") {
    for (const auto& n0 :
         {InitialDistribution::weibull(11, 2), InitialDistribution::nakagami(6, 4),
          InitialDistribution::mixture({0.5, 0.5}, {InitialDistribution::gamma(8, 8),
                                                    InitialDistribution::gamma(11, 3)})}) {
        const double hi = n0.quantile(0.999999);
        const double mass =
            adaptive_simpson([&](double x) { return n0.density(x); }, 0.0, hi, 1e-12);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("sampling matches distribution moments") {
    const auto n0 = InitialDistribution::gamma(9, 12);
    SplitMix64 rng(12345);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = n0.sample(rng);
        sum += x;
        sq += x * x;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    // Gamma(9,12): mean 0.75, var 9/144; 5-sigma tolerance.
    CHECK(std::abs(mean - 0.75) < 5.0 * std::sqrt(9.0 / 144.0 / n));
    CHECK(var == doctest::Approx(9.0 / 144.0).epsilon(0.05));
}

TEST_CASE("envelope constants: exact case and frozen values") {
    // Gamma(4,4) with lambda=2, lambda'=2: suprema known in closed form.
    const auto env = envelope_constants(InitialDistribution::gamma(4, 4), 2.0, 2.0);
    CHECK(env.C_lambda == doctest::Approx(256.0).epsilon(1e-4));
    CHECK(env.D_lambda == doctest::Approx(128.0).epsilon(1e-4));

    // Oracle-frozen values for Gamma(9,12) at lambda = lambda' = 6.
    const auto env9 = envelope_constants(InitialDistribution::gamma(9, 12), 6.0, 6.0);
    CHECK(env9.C_lambda == doctest::Approx(108116.0).epsilon(2e-3));
    CHECK(env9.D_lambda == doctest::Approx(17081.0).epsilon(2e-3));
}

TEST_CASE("degenerate and invalid inputs throw") {
    CHECK_THROWS_AS(moments(ShorteningLaw::uniform(0.0)), Error);
    CHECK_THROWS_AS(InitialDistribution::gamma(0, 12).validate(), Error);
    // Envelope explodes when lambda exceeds the density's decay rate.
    CHECK_THROWS_AS(envelope_constants(InitialDistribution::gamma(9, 12), 13.0, 1.0),
                    UnboundedEnvelope);
}
