#include "teloinv/gaver_stehfest.hpp"

#include <cmath>

#include "teloinv/bell.hpp"
#include "teloinv/errors.hpp"

namespace teloinv {

GSPlan gs_weights(int K, PrecisionContext ctx) {
    if (K < 1) throw Error("gs_weights: K >= 1 required");
    GSPlan plan;
    plan.K = K;
    plan.precision = ctx;
    plan.weights.reserve(2 * K);

    // Binomials as exact integers.
    const auto C = binomial_table<BigInt>(2 * K);
    BigInt kfact(1);
    for (int j = 2; j <= K; ++j) kfact *= j;

    double max_log10 = 0.0;
    for (int n = 1; n <= 2 * K; ++n) {
        BigInt s(0);
        for (int j = (n + 1) / 2; j <= std::min(n, K); ++j) {
            BigInt term = C[K][j] * C[2 * j][j] * C[j][n - j];
            BigInt jp(1);
            for (int e = 0; e < K + 1; ++e) jp *= j;
            s += jp * term;
        }
        BigRat v(s, kfact);
        if ((n + K) % 2 != 0) v = -v;
        max_log10 = std::max(
            max_log10, static_cast<double>(boost::multiprecision::numerator(v).str().size()) -
                           static_cast<double>(boost::multiprecision::denominator(v).str().size()));
        plan.weights.push_back(std::move(v));
    }
    plan.weight_digits = static_cast<unsigned>(std::max(0.0, max_log10)) + 1;
    return plan;
}

Real gs_invert(const std::function<Real(const Real&)>& L, const Real& x, const GSPlan& plan,
               GSDiagnostics* diag, GSPrecisionPolicy policy) {
    if (!(x > 0)) throw Error("gs_invert: x > 0 required");
    const unsigned contract = plan.precision.digits;
    const unsigned working = (policy == GSPrecisionPolicy::Padded)
                                 ? contract + plan.weight_digits + 10
                                 : contract;
    ScopedPrecision scope(working);
    const Real ln2 = log(Real(2));
    const Real xw = round_to(x, working);
    Real acc(0), max_partial(0);
    for (int n = 1; n <= 2 * plan.K; ++n) {
        const Real s = n * ln2 / xw;
        acc += Real(plan.weights[n - 1]) * L(s);
        if (abs(acc) > max_partial) max_partial = abs(acc);
    }
    Real result = ln2 / xw * acc;
    const Real scale = abs(result);
    bool exhausted = false;
    if (max_partial > 0) {
        const double mp = log10(max_partial).convert_to<double>();
        const double rs = (scale > 0) ? log10(scale).convert_to<double>() : mp - 2.0 * working;
        exhausted = mp > static_cast<double>(working) - 10.0 + rs;
        if (diag != nullptr) {
            diag->max_partial_log10 = mp;
            diag->precision_exhausted = exhausted;
        }
    } else if (diag != nullptr) {
        *diag = GSDiagnostics{};
    }
    return round_to(result, contract);
}

namespace {

EstimateCurve invert_linked_transform(const ModelConfig& config,
                                      const std::function<Real(const Real&)>& L_cemetery,
                                      int K, const std::vector<double>& x_grid,
                                      PrecisionContext ctx, GSPrecisionPolicy policy,
                                      EstimateCurve::Id id) {
    const GSPlan plan = gs_weights(K, ctx);
    const unsigned working = (policy == GSPrecisionPolicy::Padded)
                                 ? ctx.digits + plan.weight_digits + 10
                                 : ctx.digits;
    EstimateCurve curve;
    curve.x = x_grid;
    curve.values.resize(x_grid.size());
    curve.estimator_id = id;
    curve.N = config.N;
    curve.K = K;
    curve.digits = ctx.digits;

    ScopedPrecision scope(working);
    const Moments mom = moments(config.law);
    const Real b(config.b), N(config.N);
    const Real bm1 = b * mom.m1;
    const Real diff = b * mom.m2 / (2 * N);
    const Real shift = bm1 * bm1 * 2 * N / (b * mom.m2);
    auto L_full = [&](const Real& p) {
        const Real q = bm1 * p + diff * p * p;
        return (1 + p * bm1 / (shift + q)) * L_cemetery(q);
    };
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        GSDiagnostics diag;
        curve.values[i] =
            gs_invert(L_full, Real(x_grid[i]), plan, &diag, policy).convert_to<double>();
        curve.precision_exhausted |= diag.precision_exhausted;
    }
    return curve;
}

}  // namespace

EstimateCurve estimate_n0_noise_free(const ModelConfig& config, int K,
                                     const std::vector<double>& x_grid, PrecisionContext ctx,
                                     GSPrecisionPolicy policy) {
    // The explicit transform must be assembled at the same working precision
    // the inversion will consume it at.
    const GSPlan probe = gs_weights(K, ctx);
    const unsigned working = (policy == GSPrecisionPolicy::Padded)
                                 ? ctx.digits + probe.weight_digits + 10
                                 : ctx.digits;
    ScopedPrecision scope(working);
    const CemeteryExplicit cemetery = explicit_cemetery_laplace(config);
    return invert_linked_transform(
        config, [&](const Real& q) { return cemetery.eval(q); }, K, x_grid, ctx, policy,
        EstimateCurve::Id::GS_noise_free);
}

EstimateCurve estimate_n0_from_samples(const ModelConfig& config,
                                       const SenescenceSample& sample, int K, double alpha,
                                       const std::vector<double>& x_grid, PrecisionContext ctx,
                                       GSPrecisionPolicy policy) {
    static const double kSqrtLog2 = std::sqrt(std::log(2.0));
    if (!(alpha > 0) || alpha >= kSqrtLog2)
        throw BandwidthOutOfRange("estimate_n0_from_samples: alpha outside (0, sqrt(log 2))");
    const GammaKDE kde = make_gamma_kde(sample.times, alpha);
    EstimateCurve curve = invert_linked_transform(
        config, [&](const Real& q) { return gamma_mixture_laplace(kde, q); }, K, x_grid, ctx,
        policy, EstimateCurve::Id::GS_sampled);
    curve.alpha = alpha;
    curve.seed = sample.seed;
    return curve;
}

EstimateCurve estimate_n0_first_order(const ModelConfig& config, const CemeterySeries& series,
                                      const std::vector<double>& x_grid) {
    const double bm1 = config.b * moments(config.law).m1.convert_to<double>();
    EstimateCurve curve;
    curve.x = x_grid;
    curve.estimator_id = EstimateCurve::Id::FirstOrder_old;
    curve.N = config.N;
    curve.values.reserve(x_grid.size());
    for (double x : x_grid) curve.values.push_back(series.interpolate(x / bm1) / bm1);
    return curve;
}

EstimateCurve estimate_n0_first_order(const ModelConfig& config,
                                      const CemeteryExplicit& cemetery,
                                      const std::vector<double>& x_grid) {
    const double bm1 = (cemetery.bm1).convert_to<double>();
    EstimateCurve curve;
    curve.x = x_grid;
    curve.estimator_id = EstimateCurve::Id::FirstOrder_old;
    curve.N = config.N;
    curve.values.reserve(x_grid.size());
    for (double x : x_grid)
        curve.values.push_back(cemetery.density(Real(x / bm1)).convert_to<double>() / bm1);
    return curve;
}

EstimateCurve estimate_n0_first_order(const ModelConfig& config,
                                      const SenescenceSample& sample, double alpha,
                                      const std::vector<double>& x_grid) {
    const double bm1 = config.b * moments(config.law).m1.convert_to<double>();
    EstimateCurve curve;
    curve.x = x_grid;
    curve.estimator_id = EstimateCurve::Id::FirstOrder_old;
    curve.N = config.N;
    curve.alpha = alpha;
    curve.seed = sample.seed;
    curve.values.reserve(x_grid.size());
    for (double x : x_grid)
        curve.values.push_back(log_kde_eval(sample.times, alpha, x / bm1) / bm1);
    return curve;
}

int suggest_K(std::size_t n_d) {
    if (n_d < 100) return 16;
    if (n_d < 1000) return 22;
    return 30;
}

}  // namespace teloinv
