#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace teloinv {

/// Gauss-Legendre rule on [-1,1]; nodes/weights computed once by Newton
/// iteration on the Legendre polynomial.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(int n) : nodes(n), weights(n) {
        for (int i = 0; i < n; ++i) {
            // Chebyshev initial guess, then Newton on P_n.
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }

    /// Integrate f over [a,b] with a single panel.
    template <typename F>
    double integrate(F&& f, double a, double b) const {
        const double c = 0.5 * (a + b), d = 0.5 * (b - a);
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            s += weights[i] * f(c + d * nodes[i]);
        return s * d;
    }

    /// Composite rule with `panels` equal panels.
    template <typename F>
    double integrate(F&& f, double a, double b, int panels) const {
        double s = 0.0;
        const double w = (b - a) / panels;
        for (int p = 0; p < panels; ++p) s += integrate(f, a + p * w, a + (p + 1) * w);
        return s;
    }
};

/// Shared 64-point rule (plenty for the smooth kernels used here).
inline const GaussLegendre& gl64() {
    static const GaussLegendre rule(64);
    return rule;
}

inline const GaussLegendre& gl16() {
    static const GaussLegendre rule(16);
    return rule;
}

namespace detail {
template <typename F>
double adaptive_simpson_rec(F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

/// Adaptive Simpson quadrature with absolute tolerance.
template <typename F>
double adaptive_simpson(F f, double a, double b, double tol = 1e-10, int max_depth = 40) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace teloinv
