#include "teloinv/shortening_law.hpp"

#include <cmath>
#include <stdexcept>

#include "teloinv/errors.hpp"
#include "teloinv/quadrature.hpp"

namespace teloinv {

ShorteningLaw ShorteningLaw::uniform(double delta) {
    if (!(delta > 0)) throw ConfigError("Uniform shortening law needs delta > 0");
    ShorteningLaw law;
    law.kind = Kind::Uniform;
    law.delta = delta;
    return law;
}

ShorteningLaw ShorteningLaw::tabulated(double delta, std::vector<double> density_values) {
    if (!(delta > 0) || density_values.size() < 2)
        throw ConfigError("Tabulated shortening law needs delta > 0 and >= 2 grid values");
    ShorteningLaw law;
    law.kind = Kind::Tabulated;
    law.delta = delta;
    law.table = std::move(density_values);
    return law;
}

ShorteningLaw ShorteningLaw::degenerate(double v0) {
    if (!(v0 > 0)) throw ConfigError("DegenerateTest shortening law needs v0 > 0");
    ShorteningLaw law;
    law.kind = Kind::DegenerateTest;
    law.delta = v0;
    law.v0 = v0;
    return law;
}

double ShorteningLaw::density(double v) const {
    if (v < 0 || v > delta) return 0.0;
    switch (kind) {
        case Kind::Uniform:
            return 1.0 / delta;
        case Kind::Tabulated: {
            // Linear interpolation on the uniform v-grid.
            const double h = delta / static_cast<double>(table.size() - 1);
            const double u = v / h;
            const auto i = static_cast<std::size_t>(u);
            if (i + 1 >= table.size()) return table.back();
            const double w = u - static_cast<double>(i);
            return (1.0 - w) * table[i] + w * table[i + 1];
        }
        case Kind::DegenerateTest:
            throw Error("DegenerateTest law has no density");
    }
    return 0.0;
}

double ShorteningLaw::cdf(double v) const {
    if (v <= 0) return 0.0;
    if (v >= delta) return 1.0;
    switch (kind) {
        case Kind::Uniform:
            return v / delta;
        case Kind::Tabulated:
            return adaptive_simpson([this](double u) { return density(u); }, 0.0, v, 1e-12);
        case Kind::DegenerateTest:
            return v < v0 ? 0.0 : 1.0;
    }
    return 0.0;
}

void ShorteningLaw::validate() const {
    if (kind == Kind::DegenerateTest) return;  // point mass, trivially normalized
    const double mass =
        adaptive_simpson([this](double v) { return density(v); }, 0.0, delta, 1e-13);
    if (std::abs(mass - 1.0) > 1e-9)
        throw NonNormalizedDensity("shortening density integrates to " + std::to_string(mass));
}

Moments moments(const ShorteningLaw& law) {
    law.validate();
    Moments m;
    switch (law.kind) {
        case ShorteningLaw::Kind::Uniform: {
            const Real d(law.delta);
            m.m1 = d / 2;
            m.m2 = d * d / 3;
            m.m3 = d * d * d / 4;
            break;
        }
        case ShorteningLaw::Kind::DegenerateTest: {
            const Real v(law.v0);
            m.m1 = v;
            m.m2 = v * v;
            m.m3 = v * v * v;
            break;
        }
        case ShorteningLaw::Kind::Tabulated: {
            auto mom = [&](int i) {
                return adaptive_simpson(
                    [&](double v) { return std::pow(v, i) * law.density(v); }, 0.0, law.delta,
                    1e-13);
            };
            m.m1 = Real(mom(1));
            m.m2 = Real(mom(2));
            m.m3 = Real(mom(3));
            break;
        }
    }
    return m;
}

namespace {

/// I_j(s) = int_0^delta v^j e^{-s v} dv via the forward recursion
/// I_j = (j I_{j-1} - delta^j e^{-s delta}) / s; at the working precision the
/// mild cancellation (one digit per order) is immaterial.
std::vector<Real> incomplete_exponential(int jmax, const Real& s, const Real& delta) {
    std::vector<Real> I(jmax + 1);
    const Real eds = exp(-s * delta);
    I[0] = (1 - eds) / s;
    Real dpow = delta;
    for (int j = 1; j <= jmax; ++j) {
        I[j] = (j * I[j - 1] - dpow * eds) / s;
        dpow *= delta;
    }
    return I;
}

}  // namespace

Real law_laplace(const ShorteningLaw& law, const Real& s) {
    if (s == 0) return Real(1);
    switch (law.kind) {
        case ShorteningLaw::Kind::Uniform:
            return (1 - exp(-s * Real(law.delta))) / (s * Real(law.delta));
        case ShorteningLaw::Kind::DegenerateTest:
            return exp(-s * Real(law.v0));
        case ShorteningLaw::Kind::Tabulated: {
            const double sd = s.convert_to<double>();
            return Real(adaptive_simpson(
                [&](double v) { return std::exp(-sd * v) * law.density(v); }, 0.0, law.delta,
                1e-14));
        }
    }
    return Real(0);
}

std::pair<Real, Real> law_transform_family(const ShorteningLaw& law, int j, const Real& s) {
    if (j < 0) throw Error("law_transform_family: j must be >= 0");
    if (!(s > 0)) throw Error("law_transform_family: s must be > 0");
    switch (law.kind) {
        case ShorteningLaw::Kind::Uniform: {
            const Real d(law.delta);
            auto I = incomplete_exponential(j + 1, s, d);
            return {I[j] / d, I[j] - I[j + 1] / d};
        }
        case ShorteningLaw::Kind::DegenerateTest: {
            // g is a point mass at v0; 1-G is the indicator of [0, v0).
            const Real v(law.v0);
            auto I = incomplete_exponential(j, s, v);
            return {pow(v, j) * exp(-s * v), I[j]};
        }
        case ShorteningLaw::Kind::Tabulated: {
            const double sd = s.convert_to<double>();
            const double a = adaptive_simpson(
                [&](double v) { return std::pow(v, j) * std::exp(-sd * v) * law.density(v); },
                0.0, law.delta, 1e-14);
            const double b = adaptive_simpson(
                [&](double v) {
                    return std::pow(v, j) * std::exp(-sd * v) * (1.0 - law.cdf(v));
                },
                0.0, law.delta, 1e-12);
            return {Real(a), Real(b)};
        }
    }
    return {Real(0), Real(0)};
}

}  // namespace teloinv
