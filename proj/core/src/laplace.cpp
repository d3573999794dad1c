#include "teloinv/laplace.hpp"

#include <algorithm>
#include <cmath>

#include "teloinv/bell.hpp"
#include "teloinv/errors.hpp"

namespace teloinv {

Real CemeteryExplicit::eval(const Real& p) const {
    const Real pole = bm1 * beta_tilde;
    if (!(p > -pole)) throw AbscissaViolation("CemeteryExplicit: p <= -b m1 beta_tilde");
    const Real denom = p + pole;
    // sum a_i i!/(p+pole)^{i+1}, Horner-style from the highest order down.
    Real s(0);
    Real fact(1);
    Real dpow = denom;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i > 0) {
            fact *= static_cast<int>(i);
            dpow *= denom;
        }
        s += a[i] * fact / dpow;
    }
    return s;
}

Real CemeteryExplicit::density(const Real& t) const {
    const Real decay = exp(-bm1 * beta_tilde * t);
    Real s(0), tpow(1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i > 0) tpow *= t;
        s += a[i] * tpow;
    }
    return s * decay;
}

LaplaceFn CemeteryExplicit::as_laplace_fn() const {
    LaplaceFn fn;
    fn.repr = LaplaceFn::Repr::CemeteryExplicit;
    fn.abscissa = -(bm1 * beta_tilde).convert_to<double>();
    fn.eval = [self = *this](const Real& p) { return self.eval(p); };
    return fn;
}

CemeteryExplicit explicit_cemetery_laplace(const ModelConfig& config) {
    const double ell_d = config.n0.param1();
    if (config.n0.kind() != InitialDistribution::Kind::Gamma ||
        ell_d != std::floor(ell_d) || ell_d < 1)
        throw NonIntegerShape("explicit_cemetery_laplace: Gamma with integer shape required");
    const int ell = static_cast<int>(ell_d);
    const Real b(config.b), N(config.N), beta(config.n0.param2());
    const Moments mom = moments(config.law);
    const Real s = beta / N;

    CemeteryExplicit out;
    out.bm1 = b * mom.m1;
    out.beta_tilde = (N / mom.m1) * (1 - law_laplace(config.law, s));

    // Bell-polynomial arguments z_k = b N^{-(k-1)} L(g Id^k)(beta/N).
    std::vector<Real> z;
    Real npow(1);
    for (int k = 1; k <= ell - 1; ++k) {
        z.push_back(b * law_transform_family(config.law, k, s).first / npow);
        npow *= N;
    }
    const auto B = bell_partial_table(ell - 1, z);
    const auto C = binomial_table<Real>(ell - 1);

    // Survival-weighted transforms L((1-G) Id^m)(beta/N), m = 0..ell-1.
    std::vector<Real> surv(ell);
    for (int m = 0; m < ell; ++m) surv[m] = law_transform_family(config.law, m, s).second;

    Real fact(1);
    for (int k = 2; k <= ell - 1; ++k) fact *= k;
    const Real prefactor = b * pow(beta, ell) / fact;
    out.a.assign(ell, Real(0));
    for (int i = 0; i < ell; ++i) {
        Real acc(0);
        for (int j = i; j <= ell - 1; ++j) {
            const int m = ell - 1 - j;  // power of Id paired with 1-G
            acc += C[ell - 1][j] * surv[m] / pow(N, m) * B[j][i];
        }
        out.a[i] = prefactor * acc;
    }
    return out;
}

Real link_prefactor(const ModelConfig& config, const Real& p) {
    const Moments mom = moments(config.law);
    const Real b(config.b), N(config.N);
    const Real bm1 = b * mom.m1;
    const Real q = bm1 * p + b * mom.m2 / (2 * N) * p * p;
    return 1 + p * bm1 / (bm1 * bm1 * 2 * N / (b * mom.m2) + q);
}

Real link_map(const ModelConfig& config, const std::function<Real(const Real&)>& L_u,
              const Real& p) {
    return link_prefactor(config, p) * L_u(q_N_hp(config, p));
}

Complex link_map(const ModelConfig& config, const std::function<Complex(Complex)>& L_u,
                 Complex p, double R_n0, double R_u) {
    if (!in_P_N(config, p, R_n0, R_u))
        throw OutsideP_N("link_map: p outside the validity region");
    const Moments mom = moments(config.law);
    const double m1 = mom.m1.convert_to<double>(), m2 = mom.m2.convert_to<double>();
    const double bm1 = config.b * m1;
    const Complex q = q_N(config, p);
    const Complex prefactor = 1.0 + p * bm1 / (bm1 * bm1 * 2.0 * config.N / (config.b * m2) + q);
    return prefactor * L_u(q);
}

Real gamma_mixture_laplace(const GammaKDE& kde, const Real& p) {
    const double min_rate = *std::min_element(kde.beta_star.begin(), kde.beta_star.end());
    if (!(p.convert_to<double>() > -min_rate))
        throw AbscissaViolation("gamma_mixture_laplace: p <= -min beta*");
    Real s(0);
    const Real ell(kde.ell_star);
    for (double beta : kde.beta_star) s += pow(1 + p / Real(beta), -ell);
    return s / static_cast<int>(kde.beta_star.size());
}

Complex empirical_laplace(const SenescenceSample& sample, Complex p) {
    Complex s = 0;
    for (double t : sample.times) s += std::exp(-p * t);
    return s / static_cast<double>(sample.times.size());
}

Complex numeric_laplace(const CemeterySeries& series, Complex p) {
    const double mass = series.total_mass();
    if (mass < 1.0 - 1e-4)
        throw InsufficientHorizon("numeric_laplace: series covers only mass " +
                                  std::to_string(mass));
    Complex integral = 0;
    for (std::size_t i = 1; i < series.t.size(); ++i) {
        const double dt = series.t[i] - series.t[i - 1];
        integral += 0.5 * dt *
                    (std::exp(-p * series.t[i]) * series.flux[i] +
                     std::exp(-p * series.t[i - 1]) * series.flux[i - 1]);
    }
    // Exponential tail beyond the horizon: fit flux ~ A e^{-r t} over the
    // last decade and integrate it analytically against e^{-pt}.
    const double T = series.t.back();
    const double fT = series.flux.back();
    if (fT > 0) {
        const double t0 = 0.9 * T;
        const double f0 = series.interpolate(t0);
        if (f0 > fT) {
            const double r = std::log(f0 / fT) / (T - t0);
            integral += fT * std::exp(-p * T) / (p + r);
        }
    }
    return integral;
}

}  // namespace teloinv
