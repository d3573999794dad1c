#include "teloinv/model.hpp"

#include <cmath>
#include <vector>

#include "teloinv/errors.hpp"

namespace teloinv {

HeatKernelParams heat_kernel_params(const ModelConfig& config) {
    const Moments m = config.law_moments();
    return {config.b * m.m1.convert_to<double>(),
            config.b * m.m2.convert_to<double>() / config.N};
}

Complex q_N(const ModelConfig& config, Complex p) {
    const Moments m = config.law_moments();
    const double m1 = m.m1.convert_to<double>(), m2 = m.m2.convert_to<double>();
    return config.b * m1 * p + (config.b * m2 / (2.0 * config.N)) * p * p;
}

Real q_N_hp(const ModelConfig& config, const Real& p) {
    const Moments m = config.law_moments();
    return Real(config.b) * m.m1 * p + Real(config.b) * m.m2 / (2 * Real(config.N)) * p * p;
}

SpectralConstants spectral_constants(const ModelConfig& config, double lambda) {
    if (!(lambda > 0)) throw DegenerateLambda("spectral_constants: lambda must be > 0");
    const Moments m = config.law_moments();
    const Real lam(lambda), b(config.b), N(config.N);
    SpectralConstants out;
    out.lambda = lam;
    out.lambda_N = lam * (1 - lam * m.m2 / (2 * m.m1 * N));
    if (!(out.lambda_N > 0))
        throw DegenerateLambda("spectral_constants: lambda_N <= 0 (N too small)");
    const Real s = 2 * m.m1 * out.lambda_N / (m.m2 * lam);
    out.C_N = (b / 2) * (1 - law_laplace(config.law, s));
    const Real crossover = b * m.m1 * out.lambda_N / out.C_N;
    out.beta_N = (N <= crossover) ? N * out.C_N : b * m.m1 * out.lambda_N;
    return out;
}

bool in_P_N(const ModelConfig& config, Complex p, double R_n0, double R_u) {
    const Moments m = config.law_moments();
    const double m1 = m.m1.convert_to<double>(), m2 = m.m2.convert_to<double>();
    const double floor_q =
        -(config.b * m1) * (config.b * m1) * 2.0 * config.N / (config.b * m2);
    return p.real() > R_n0 && q_N(config, p).real() > std::max(R_u, floor_q);
}

EnvelopeConstants envelope_constants(const InitialDistribution& n0, double lambda,
                                     double lambda_prime) {
    if (n0.kind() != InitialDistribution::Kind::Gamma || n0.param1() < 4 ||
        n0.param1() != std::floor(n0.param1()))
        throw Error("envelope_constants: Gamma with integer shape >= 4 required");
    const double beta = n0.param2();
    if (lambda >= beta)
        throw UnboundedEnvelope("envelope_constants: lambda >= beta, supremum diverges");
    if (!(lambda > 0) || !(lambda_prime > 0))
        throw Error("envelope_constants: lambda, lambda' must be > 0");

    // sup over a geometric grid; resolution doubles until both sups are
    // stable to 1e-6 relative.
    const double x_lo = 1e-9, x_hi = 200.0 / beta * std::max(1.0, n0.param1() / 4.0);
    auto scan = [&](int points) {
        double C = 0, D = 0;
        const double r = std::pow(x_hi / x_lo, 1.0 / (points - 1));
        double x = x_lo;
        for (int i = 0; i < points; ++i, x *= r) {
            const double grow = (lambda * x < 700) ? std::exp(lambda * x) : 0.0;
            if (grow == 0.0) break;  // density decays faster; tail cannot win
            C = std::max(C, std::abs(n0.derivative(3, x)) * grow);
            D = std::max(D, std::abs(n0.derivative(2, x)) * grow /
                                (1.0 - std::exp(-lambda_prime * x)));
        }
        return std::pair<double, double>{C, D};
    };
    auto [C, D] = scan(1 << 14);
    for (int points = 1 << 15; points <= (1 << 22); points <<= 1) {
        auto [C2, D2] = scan(points);
        const bool stable = std::abs(C2 - C) <= 1e-6 * C2 && std::abs(D2 - D) <= 1e-6 * D2;
        C = C2;
        D = D2;
        if (stable) break;
    }
    return {C, D, lambda, lambda_prime};
}

EnvelopeConstants default_envelope_constants(const ModelConfig& config) {
    const Moments m = config.law_moments();
    const double m1 = m.m1.convert_to<double>(), m2 = m.m2.convert_to<double>();
    const double lambda = config.n0.param2() / 2.0;
    const double cap = (2.0 * config.N * m1 / m2 - 2.0 * lambda) / 2.0;
    return envelope_constants(config.n0, lambda, std::min(lambda, cap));
}

}  // namespace teloinv
