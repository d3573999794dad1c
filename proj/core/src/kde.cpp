#include "teloinv/kde.hpp"

#include <algorithm>
#include <cmath>

#include "teloinv/errors.hpp"

namespace teloinv {

namespace {
const double kSqrtLog2 = std::sqrt(std::log(2.0));

double gauss_pdf(double u) { return std::exp(-0.5 * u * u) / std::sqrt(2.0 * M_PI); }

double sample_sd(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    double mean = 0;
    for (double x : v) mean += x;
    mean /= n;
    double ss = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (n - 1));
}

double interquartile_range(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    auto quantile = [&](double q) {
        const double pos = q * (static_cast<double>(v.size()) - 1);
        const auto i = static_cast<std::size_t>(pos);
        if (i + 1 >= v.size()) return v.back();
        const double w = pos - static_cast<double>(i);
        return (1 - w) * v[i] + w * v[i + 1];
    };
    return quantile(0.75) - quantile(0.25);
}
}  // namespace

GammaKernelParams gamma_kernel_params(double a, double sigma,
                                      GammaKernelParams::Variant variant) {
    if (!(sigma > 0) || sigma >= kSqrtLog2)
        throw BandwidthOutOfRange("gamma_kernel_params: sigma must lie in (0, sqrt(log 2))");
    const double ell = 1.0 / std::expm1(sigma * sigma);  // > 1 on the valid range
    double beta = 0;
    switch (variant) {
        case GammaKernelParams::Variant::Star:
            beta = std::exp(-a - sigma * sigma / 2.0) * ell;
            break;
        case GammaKernelParams::Variant::DoubleStar:
            beta = std::exp(-a) * ell;
            break;
        case GammaKernelParams::Variant::TripleStar:
            beta = std::exp(-a) * (ell - 1.0);
            break;
    }
    return {ell, beta, variant};
}

GammaKDE make_gamma_kde(const std::vector<double>& times, double alpha,
                        GammaKernelParams::Variant variant) {
    if (times.empty()) throw Error("make_gamma_kde: empty sample");
    GammaKDE kde;
    kde.alpha = alpha;
    kde.times = times;
    kde.beta_star.reserve(times.size());
    double ell = 0;
    for (double t : times) {
        const auto p = gamma_kernel_params(std::log(t), alpha, variant);
        ell = p.ell_star;
        kde.beta_star.push_back(p.beta_star);
    }
    kde.ell_star = ell;
    return kde;
}

double gamma_kde_eval(const GammaKDE& kde, double t) {
    if (t < 0) return 0.0;
    if (t == 0) return 0.0;  // ell* > 1, density vanishes at the origin
    double s = 0;
    const double lg = std::lgamma(kde.ell_star);
    for (double beta : kde.beta_star)
        s += std::exp(kde.ell_star * std::log(beta) + (kde.ell_star - 1) * std::log(t) -
                      beta * t - lg);
    return s / static_cast<double>(kde.beta_star.size());
}

double log_kde_eval(const std::vector<double>& times, double alpha, double t) {
    if (!(alpha > 0)) throw BandwidthOutOfRange("log_kde_eval: alpha must be > 0");
    if (!(t > 0)) return 0.0;
    double s = 0;
    for (double Ti : times) s += gauss_pdf(std::log(t / Ti) / alpha);
    return s / (static_cast<double>(times.size()) * t * alpha);
}

BandwidthResult bandwidth_nrd(const std::vector<double>& log_sample) {
    if (log_sample.size() < 2) throw Error("bandwidth_nrd: need n >= 2");
    const double sd = sample_sd(log_sample);
    const double iqr = interquartile_range(log_sample);
    double spread = std::min(sd, iqr / 1.34);
    if (spread == 0.0) spread = sd;  // degenerate IQR on tied quartiles
    if (spread == 0.0) throw ZeroSpread("bandwidth_nrd: sample has zero spread");
    BandwidthResult r;
    r.alpha = 0.9 * spread * std::pow(static_cast<double>(log_sample.size()), -0.2);
    if (r.alpha >= kSqrtLog2) {
        r.alpha = kSqrtLog2 * (1.0 - 1e-6);
        r.clipped = true;
    }
    return r;
}

namespace {
// Gaussian-kernel derivative functionals used by the SJ plug-in:
// phi4(u) = (u^4 - 6u^2 + 3) phi(u), phi6(u) = (u^6 - 15u^4 + 45u^2 - 15) phi(u).
double phi4(double u) {
    const double u2 = u * u;
    return ((u2 - 6.0) * u2 + 3.0) * gauss_pdf(u);
}
double phi6(double u) {
    const double u2 = u * u;
    return (((u2 - 15.0) * u2 + 45.0) * u2 - 15.0) * gauss_pdf(u);
}

double pair_sum(const std::vector<double>& x, double bw, double (*f)(double)) {
    const auto n = x.size();
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s += f((x[i] - x[j]) / bw);
    return s;
}
}  // namespace

BandwidthResult bandwidth_sj(const std::vector<double>& log_sample) {
    if (log_sample.size() < 10) throw Error("bandwidth_sj: need n >= 10");
    const auto n = static_cast<double>(log_sample.size());
    const double sd = sample_sd(log_sample);
    const double iqr = interquartile_range(log_sample);
    double spread = std::min(sd, iqr / 1.349);
    if (spread == 0.0) spread = sd;
    if (spread == 0.0) throw ZeroSpread("bandwidth_sj: sample has zero spread");

    // Pilot functionals at normal-reference bandwidths (Sheather & Jones).
    const double a = 0.920 * spread * std::pow(n, -1.0 / 7.0);
    const double b = 0.912 * spread * std::pow(n, -1.0 / 9.0);
    const double TD = -pair_sum(log_sample, b, phi6) / (n * (n - 1) * std::pow(b, 7));
    const double SD = pair_sum(log_sample, a, phi4) / (n * (n - 1) * std::pow(a, 5));

    const double nrd = bandwidth_nrd(log_sample).alpha;
    BandwidthResult r;
    if (!(TD > 0) || !(SD > 0)) {
        r = bandwidth_nrd(log_sample);
        r.fallback = true;
        return r;
    }
    const double RK = 1.0 / (2.0 * std::sqrt(M_PI));  // roughness of the Gaussian kernel
    auto objective = [&](double h) {
        const double alpha2 = 1.357 * std::pow(SD / TD, 1.0 / 7.0) * std::pow(h, 5.0 / 7.0);
        const double SDa = pair_sum(log_sample, alpha2, phi4) / (n * (n - 1) * std::pow(alpha2, 5));
        if (!(SDa > 0)) return 1e300;  // treated as no root on this branch
        return std::pow(RK / (n * SDa), 0.2) - h;
    };
    double lo = 1e-4, hi = 10.0 * nrd;
    double flo = objective(lo), fhi = objective(hi);
    if (!(flo > 0) || !(fhi < 0)) {
        r = bandwidth_nrd(log_sample);
        r.fallback = true;
        return r;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (objective(mid) > 0 ? lo : hi) = mid;
    }
    r.alpha = 0.5 * (lo + hi);
    if (r.alpha >= kSqrtLog2) {
        r.alpha = kSqrtLog2 * (1.0 - 1e-6);
        r.clipped = true;
    }
    return r;
}

}  // namespace teloinv
