#include "teloinv/initial_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "teloinv/errors.hpp"
#include "teloinv/quadrature.hpp"
#include "teloinv/rng.hpp"

namespace teloinv {

InitialDistribution InitialDistribution::gamma(double ell, double beta) {
    if (!(ell > 0) || !(beta > 0)) throw ConfigError("Gamma needs ell > 0, beta > 0");
    InitialDistribution d;
    d.kind_ = Kind::Gamma;
    d.p1_ = ell;
    d.p2_ = beta;
    return d;
}

InitialDistribution InitialDistribution::weibull(double k, double scale) {
    if (!(k > 0) || !(scale > 0)) throw ConfigError("Weibull needs k > 0, scale > 0");
    InitialDistribution d;
    d.kind_ = Kind::Weibull;
    d.p1_ = k;
    d.p2_ = scale;
    return d;
}

InitialDistribution InitialDistribution::nakagami(double m, double omega) {
    if (!(m >= 0.5) || !(omega > 0)) throw ConfigError("Nakagami needs m >= 1/2, Omega > 0");
    InitialDistribution d;
    d.kind_ = Kind::Nakagami;
    d.p1_ = m;
    d.p2_ = omega;
    return d;
}

InitialDistribution InitialDistribution::mixture(std::vector<double> weights,
                                                 std::vector<InitialDistribution> components) {
    if (weights.size() != components.size() || weights.empty())
        throw ConfigError("mixture: weights/components size mismatch");
    double total = 0;
    for (double w : weights) {
        if (!(w >= 0)) throw ConfigError("mixture: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw ConfigError("mixture: weights must sum to 1");
    InitialDistribution d;
    d.kind_ = Kind::Mixture;
    d.weights_ = std::move(weights);
    d.components_ = std::move(components);
    return d;
}

InitialDistribution InitialDistribution::tabulated(std::vector<double> x,
                                                   std::vector<double> density) {
    if (x.size() != density.size() || x.size() < 2)
        throw ConfigError("tabulated: need matching x/density with >= 2 points");
    InitialDistribution d;
    d.kind_ = Kind::Tabulated;
    d.tab_x_ = std::move(x);
    d.tab_f_ = std::move(density);
    return d;
}

InitialDistribution InitialDistribution::point(double x0) {
    if (!(x0 > 0)) throw ConfigError("point mass needs x0 > 0");
    InitialDistribution d;
    d.kind_ = Kind::Point;
    d.p1_ = x0;
    return d;
}

double InitialDistribution::density(double x) const {
    if (x < 0) return 0.0;
    switch (kind_) {
        case Kind::Gamma: {
            if (x == 0) return p1_ > 1 ? 0.0 : (p1_ == 1 ? p2_ : INFINITY);
            // exp/log form keeps ell up to several hundred finite.
            return std::exp(p1_ * std::log(p2_) + (p1_ - 1) * std::log(x) - p2_ * x -
                            std::lgamma(p1_));
        }
        case Kind::Weibull: {
            if (x == 0) return p1_ > 1 ? 0.0 : (p1_ == 1 ? 1.0 / p2_ : INFINITY);
            const double u = x / p2_;
            return (p1_ / p2_) * std::pow(u, p1_ - 1) * std::exp(-std::pow(u, p1_));
        }
        case Kind::Nakagami: {
            if (x == 0) return 0.0;
            const double c = p1_ / p2_;
            return std::exp(std::log(2.0) + p1_ * std::log(c) - std::lgamma(p1_) +
                            (2 * p1_ - 1) * std::log(x) - c * x * x);
        }
        case Kind::Mixture: {
            double s = 0;
            for (std::size_t i = 0; i < weights_.size(); ++i)
                s += weights_[i] * components_[i].density(x);
            return s;
        }
        case Kind::Tabulated: {
            if (x <= tab_x_.front() || x >= tab_x_.back()) return 0.0;
            auto it = std::upper_bound(tab_x_.begin(), tab_x_.end(), x);
            const auto i = static_cast<std::size_t>(it - tab_x_.begin()) - 1;
            const double w = (x - tab_x_[i]) / (tab_x_[i + 1] - tab_x_[i]);
            return (1 - w) * tab_f_[i] + w * tab_f_[i + 1];
        }
        case Kind::Point:
            return 0.0;  // no density
    }
    return 0.0;
}

double InitialDistribution::derivative(int order, double x) const {
    if (order == 0) return density(x);
    if (kind_ == Kind::Gamma && p1_ == std::floor(p1_)) {
        // Closed-form n-th derivative of the Gamma(ell,beta) density:
        // sum over the polynomial degrees j' that survive n differentiations,
        //   sum_{j'=max(0,ell-1-n)}^{ell-1} (-1)^{n-(ell-1)+j'} C(n, ell-1-j')
        //       beta^{n+j'+1} / j'! x^{j'} e^{-beta x}.
        const int ell = static_cast<int>(p1_);
        const int n = order;
        const double beta = p2_;
        double s = 0.0;
        for (int jp = std::max(0, ell - 1 - n); jp <= ell - 1; ++jp) {
            const int k = ell - 1 - jp;  // differentiations spent on the power
            if (k > n) continue;
            double logmag = (n + jp + 1) * std::log(beta) - std::lgamma(jp + 1) - beta * x;
            if (jp > 0) {
                if (x <= 0) continue;
                logmag += jp * std::log(x);
            }
            double binom =
                std::exp(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1));
            binom = std::round(binom);
            const double sign = ((n - (ell - 1) + jp) % 2 == 0) ? 1.0 : -1.0;
            s += sign * binom * std::exp(logmag);
        }
        return s;
    }
    if (kind_ == Kind::Mixture) {
        double s = 0;
        for (std::size_t i = 0; i < weights_.size(); ++i)
            s += weights_[i] * components_[i].derivative(order, x);
        return s;
    }
    // Central finite differences for non-Gamma kinds.
    const double h = std::max(1e-5, 1e-5 * std::abs(x));
    if (order == 1) return (density(x + h) - density(x - h)) / (2 * h);
    if (order == 2) return (density(x + h) - 2 * density(x) + density(x - h)) / (h * h);
    if (order == 3)
        return (density(x + 2 * h) - 2 * density(x + h) + 2 * density(x - h) -
                density(x - 2 * h)) /
               (2 * h * h * h);
    throw Error("derivative: order > 3 not supported");
}

double InitialDistribution::abscissa() const {
    switch (kind_) {
        case Kind::Gamma:
            return -p2_;
        case Kind::Mixture: {
            double a = -INFINITY;
            for (const auto& c : components_) a = std::max(a, c.abscissa());
            return a;
        }
        default:
            // Compact support or super-exponential tails: entire transform.
            return -INFINITY;
    }
}

Complex InitialDistribution::laplace(Complex p) const {
    if (p.real() <= abscissa())
        throw AbscissaViolation("laplace: Re(p) <= abscissa of convergence");
    switch (kind_) {
        case Kind::Gamma:
            return std::pow(1.0 + p / p2_, -p1_);
        case Kind::Mixture: {
            Complex s = 0;
            for (std::size_t i = 0; i < weights_.size(); ++i)
                s += weights_[i] * components_[i].laplace(p);
            return s;
        }
        case Kind::Point:
            return std::exp(-p * p1_);
        default: {
            const double hi = quantile(1.0 - 1e-12);
            const double re = adaptive_simpson(
                [&](double x) { return std::exp(-p.real() * x) * std::cos(p.imag() * x) *
                                       density(x); },
                0.0, hi, 1e-12);
            const double im = adaptive_simpson(
                [&](double x) { return -std::exp(-p.real() * x) * std::sin(p.imag() * x) *
                                       density(x); },
                0.0, hi, 1e-12);
            return {re, im};
        }
    }
}

Real InitialDistribution::laplace_hp(const Real& p) const {
    if (p.convert_to<double>() <= abscissa())
        throw AbscissaViolation("laplace_hp: p <= abscissa of convergence");
    switch (kind_) {
        case Kind::Gamma:
            return pow(1 + p / Real(p2_), Real(-p1_));
        case Kind::Mixture: {
            Real s(0);
            for (std::size_t i = 0; i < weights_.size(); ++i)
                s += Real(weights_[i]) * components_[i].laplace_hp(p);
            return s;
        }
        default:
            throw Error("laplace_hp: closed form only for Gamma mixtures");
    }
}

double InitialDistribution::mean() const {
    switch (kind_) {
        case Kind::Gamma:
            return p1_ / p2_;
        case Kind::Weibull:
            return p2_ * std::tgamma(1.0 + 1.0 / p1_);
        case Kind::Nakagami:
            return std::exp(std::lgamma(p1_ + 0.5) - std::lgamma(p1_)) *
                   std::sqrt(p2_ / p1_);
        case Kind::Mixture: {
            double s = 0;
            for (std::size_t i = 0; i < weights_.size(); ++i)
                s += weights_[i] * components_[i].mean();
            return s;
        }
        case Kind::Tabulated:
            return adaptive_simpson([&](double x) { return x * density(x); }, tab_x_.front(),
                                    tab_x_.back(), 1e-12);
        case Kind::Point:
            return p1_;
    }
    return 0;
}

double InitialDistribution::quantile(double q) const {
    if (kind_ == Kind::Point) return p1_;
    if (!(q > 0) || !(q < 1)) throw Error("quantile: q in (0,1) required");
    // Bracket: expand until CDF(hi) >= q, then bisect on the numeric CDF.
    double hi = std::max(1.0, 2.0 * mean());
    auto cdf = [&](double x) {
        return adaptive_simpson([&](double u) { return density(u); }, 0.0, x, 1e-12);
    };
    while (cdf(hi) < q) hi *= 2;
    double lo = 0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < q ? lo : hi) = mid;
        if (hi - lo < 1e-12 * hi) break;
    }
    return 0.5 * (lo + hi);
}

double InitialDistribution::sample(SplitMix64& rng) const {
    switch (kind_) {
        case Kind::Gamma: {
            std::gamma_distribution<double> dist(p1_, 1.0 / p2_);
            return dist(rng);
        }
        case Kind::Weibull: {
            std::weibull_distribution<double> dist(p1_, p2_);
            return dist(rng);
        }
        case Kind::Nakagami: {
            // X = sqrt(Y), Y ~ Gamma(m, scale Omega/m).
            std::gamma_distribution<double> dist(p1_, p2_ / p1_);
            return std::sqrt(dist(rng));
        }
        case Kind::Mixture: {
            std::uniform_real_distribution<double> u01(0.0, 1.0);
            double u = u01(rng), acc = 0;
            for (std::size_t i = 0; i < weights_.size(); ++i) {
                acc += weights_[i];
                if (u <= acc) return components_[i].sample(rng);
            }
            return components_.back().sample(rng);
        }
        case Kind::Tabulated: {
            // Inverse-CDF on the linear interpolant.
            std::uniform_real_distribution<double> u01(0.0, 1.0);
            const double u = u01(rng);
            return quantile(std::min(1.0 - 1e-12, std::max(1e-12, u)));
        }
        case Kind::Point:
            return p1_;
    }
    return 0;
}

void InitialDistribution::validate() const {
    if (kind_ == Kind::Point) return;
    const double hi = quantile(1.0 - 1e-13);
    const double mass =
        adaptive_simpson([&](double x) { return density(x); }, 0.0, hi * 1.2, 1e-13);
    if (std::abs(mass - 1.0) > 1e-10)
        throw NonNormalizedDensity("initial density integrates to " + std::to_string(mass));
}

}  // namespace teloinv
