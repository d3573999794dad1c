#include "teloinv/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "teloinv/errors.hpp"
#include "teloinv/forward_sim.hpp"
#include "teloinv/kde.hpp"
#include "teloinv/laplace.hpp"
#include "teloinv/quadrature.hpp"
#include "teloinv/svg.hpp"

namespace teloinv {

namespace {

namespace fs = std::filesystem;

std::string path_in(const ExperimentSpec& spec, const std::string& file) {
    fs::create_directories(spec.out_dir);
    return (fs::path(spec.out_dir) / file).string();
}

std::vector<std::pair<std::string, std::string>> base_manifest(const ExperimentSpec& spec,
                                                              const std::string& name) {
    return {
        {"experiment", name},
        {"b", std::to_string(spec.config.b)},
        {"N", std::to_string(spec.config.N)},
        {"seed", std::to_string(spec.seed)},
        {"digits", std::to_string(spec.digits)},
    };
}

void write_case_csv(const ExperimentSpec& spec, const std::string& file,
                    const CaseResult& c) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < c.x.size(); ++i)
        rows.push_back({c.x[i], c.truth[i], c.gs.values[i], c.first_order.values[i]});
    write_csv(path_in(spec, file),
              {"label=" + c.label, "l1_gs=" + std::to_string(c.l1_gs),
               "l1_first_order=" + std::to_string(c.l1_first_order)},
              {"x", "truth", "gs_estimate", "first_order_estimate"}, rows);
}

void write_case_svg(const ExperimentSpec& spec, const std::string& file,
                    const CaseResult& c) {
    SvgChart chart;
    chart.title = c.label;
    chart.x_label = "x";
    chart.y_label = "density";
    chart.add({"truth", "#222222", c.x, c.truth});
    chart.add({"inverted transform", "#1f6fb4", c.x, c.gs.values});
    chart.add({"first order", "#d62728", c.x, c.first_order.values});
    chart.write(path_in(spec, file));
}

std::string gamma_label(double ell, double beta) {
    std::ostringstream os;
    os << "gamma(" << ell << "," << beta << ")";
    return os.str();
}

CaseResult make_case(const std::string& label, const ModelConfig& config,
                     const std::vector<double>& x, EstimateCurve gs,
                     EstimateCurve first_order) {
    CaseResult c;
    c.label = label;
    c.x = x;
    c.truth.reserve(x.size());
    for (double xi : x) c.truth.push_back(config.n0.density(xi));
    c.gs = std::move(gs);
    c.first_order = std::move(first_order);
    c.l1_gs = l1_distance(x, c.truth, c.gs.values);
    c.l1_first_order = l1_distance(x, c.truth, c.first_order.values);
    return c;
}

/// Noise-free pair of estimates for one configuration.
CaseResult noise_free_case(const ModelConfig& config, int K, const std::vector<double>& x,
                           PrecisionContext ctx, GSPrecisionPolicy policy) {
    EstimateCurve gs = estimate_n0_noise_free(config, K, x, ctx, policy);
    ScopedPrecision scope(ctx.digits);
    CemeteryExplicit cemetery = explicit_cemetery_laplace(config);
    EstimateCurve first = estimate_n0_first_order(config, cemetery, x);
    return make_case(gamma_label(config.n0.param1(), config.n0.param2()), config, x,
                     std::move(gs), std::move(first));
}

double mode_location(const std::vector<double>& x, const std::vector<double>& v) {
    const auto it = std::max_element(v.begin(), v.end());
    return x[static_cast<std::size_t>(it - v.begin())];
}

struct TailFit {
    std::vector<double> logN, logE;
};

TailFit fit_tail(const std::vector<double>& errors, const std::vector<double>& Ns) {
    if (errors.size() != Ns.size() || errors.size() < 3)
        throw InsufficientPoints("power-law fit needs at least 3 matched points");
    const std::size_t k = errors.size();
    const std::size_t tail = (k + 2) / 3;
    TailFit f;
    for (std::size_t i = k - tail; i < k; ++i) {
        if (!(errors[i] > 0.0) || !(Ns[i] > 0.0))
            throw InsufficientPoints("power-law fit needs positive errors and N values");
        f.logN.push_back(std::log(Ns[i]));
        f.logE.push_back(std::log(errors[i]));
    }
    return f;
}

double lognormal_density(double a, double sigma, double t) {
    if (t <= 0.0) return 0.0;
    const double z = (std::log(t) - a) / sigma;
    return std::exp(-0.5 * z * z) / (t * sigma * std::sqrt(2.0 * M_PI));
}

double gamma_density(double ell, double beta, double t) {
    if (t <= 0.0) return 0.0;
    return std::exp(ell * std::log(beta) + (ell - 1.0) * std::log(t) - beta * t -
                    std::lgamma(ell));
}

const char* variant_name(GammaKernelParams::Variant v) {
    switch (v) {
        case GammaKernelParams::Variant::Star: return "star";
        case GammaKernelParams::Variant::DoubleStar: return "double_star";
        default: return "triple_star";
    }
}

/// Bandwidth selection for a sample of times, honoring an override string.
BandwidthResult select_bandwidth(const SenescenceSample& sample, std::size_t n_d,
                                 const std::string& override_str, std::string* method_out) {
    std::vector<double> logs;
    logs.reserve(sample.times.size());
    for (double t : sample.times) logs.push_back(std::log(t));

    BandwidthResult bw;
    std::string method;
    if (!override_str.empty() && override_str != "nrd" && override_str != "sj") {
        bw.alpha = std::stod(override_str);
        method = "fixed";
    } else if (override_str == "nrd" || (override_str.empty() && n_d < 100)) {
        bw = bandwidth_nrd(logs);
        method = "nrd";
    } else {
        bw = bandwidth_sj(logs);
        method = bw.fallback ? "sj(nrd fallback)" : "sj";
    }
    const double cap = 0.999 * std::sqrt(std::log(2.0));
    if (bw.alpha >= cap) {
        bw.alpha = cap;
        bw.clipped = true;
    }
    if (method_out) *method_out = method;
    return bw;
}

}  // namespace

FitResult fit_constrained(const std::vector<double>& errors, const std::vector<double>& Ns,
                          double slope) {
    const TailFit f = fit_tail(errors, Ns);
    double logC = 0.0;
    for (std::size_t i = 0; i < f.logE.size(); ++i) logC += f.logE[i] + slope * f.logN[i];
    logC /= static_cast<double>(f.logE.size());
    double rss = 0.0;
    for (std::size_t i = 0; i < f.logE.size(); ++i) {
        const double r = f.logE[i] - (logC - slope * f.logN[i]);
        rss += r * r;
    }
    FitResult out;
    out.slope = slope;
    out.C = std::exp(logC);
    out.points_used = static_cast<int>(f.logE.size());
    out.residual = std::sqrt(rss / static_cast<double>(f.logE.size()));
    return out;
}

FitResult fit_free(const std::vector<double>& errors, const std::vector<double>& Ns) {
    const TailFit f = fit_tail(errors, Ns);
    const std::size_t n = f.logE.size();
    const double mx = std::accumulate(f.logN.begin(), f.logN.end(), 0.0) / n;
    const double my = std::accumulate(f.logE.begin(), f.logE.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (f.logN[i] - mx) * (f.logN[i] - mx);
        sxy += (f.logN[i] - mx) * (f.logE[i] - my);
    }
    if (sxx == 0.0) throw InsufficientPoints("free fit needs at least two distinct N values");
    FitResult out;
    out.slope = sxy / sxx;  // signed log-log slope, negative for decaying errors
    out.C = std::exp(my - out.slope * mx);
    out.points_used = static_cast<int>(n);
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = f.logE[i] - (my + out.slope * (f.logN[i] - mx));
        rss += r * r;
    }
    out.residual = std::sqrt(rss / n);
    return out;
}

void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write manifest: " + path);
    for (const auto& [k, v] : entries) out << k << '=' << v << '\n';
}

std::vector<double> default_x_grid(const InitialDistribution& n0, int points) {
    // Strictly positive: the Laplace inversion evaluates the transform at
    // k ln 2 / x, which is undefined at the wall itself.
    const double upper = 1.2 * n0.quantile(0.999);
    return linspace(upper / points, upper, points);
}

int count_modes(const std::vector<double>& values) {
    const double peak = *std::max_element(values.begin(), values.end());
    if (!(peak > 0.0)) return 0;
    const double floor_level = 0.05 * peak;
    int modes = 0;
    double last_peak = 0.0, valley = 0.0;
    bool have_peak = false;
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        const double v = values[i];
        if (have_peak) valley = std::min(valley, v);
        if (v > values[i - 1] && v >= values[i + 1] && v > floor_level) {
            // A new mode needs a real dip since the previous one.
            if (!have_peak || valley < 0.75 * std::min(v, last_peak)) {
                ++modes;
                last_peak = v;
                valley = v;
                have_peak = true;
            } else if (v > last_peak) {
                last_peak = v;  // same mode, higher summit
                valley = v;
            }
        }
    }
    return modes;
}

NoiseFreeResult run_noise_free(const ExperimentSpec& spec) {
    const int K = spec.K > 0 ? spec.K : 250;
    const PrecisionContext ctx{spec.digits};
    const std::vector<std::pair<double, double>> laws = {
        {9, 12}, {16, 16}, {25, 30}, {49, 50}};

    NoiseFreeResult out;
    auto manifest = base_manifest(spec, "noise_free");
    manifest.emplace_back("K", std::to_string(K));
    for (auto [ell, beta] : laws) {
        ModelConfig config = spec.config;
        config.n0 = InitialDistribution::gamma(ell, beta);
        const auto x = default_x_grid(config.n0);
        CaseResult c = noise_free_case(config, K, x, ctx, GSPrecisionPolicy::Padded);
        if (spec.write_files) {
            write_case_csv(spec, "noise_free_" + gamma_label(ell, beta) + ".csv", c);
            write_case_svg(spec, "noise_free_" + gamma_label(ell, beta) + ".svg", c);
        }
        manifest.emplace_back(c.label + ".l1_gs", std::to_string(c.l1_gs));
        manifest.emplace_back(c.label + ".l1_first_order", std::to_string(c.l1_first_order));
        manifest.emplace_back(c.label + ".truth_mass",
                              std::to_string(trapezoid(c.x, c.truth)));
        out.cases.push_back(std::move(c));
    }
    if (spec.write_files) write_manifest(path_in(spec, "noise_free_manifest.txt"), manifest);
    return out;
}

ConvergenceResult run_convergence(const ExperimentSpec& spec) {
    const int K = spec.K > 0 ? spec.K : 64;
    const PrecisionContext ctx{spec.digits};

    ConvergenceResult out;
    out.Ns = {5, 17, 29, 41, 57, 73, 89, 101};
    ModelConfig config = spec.config;
    config.n0 = InitialDistribution::gamma(16, 16);
    const auto x = default_x_grid(config.n0);

    for (double N : out.Ns) {
        config.N = N;
        CaseResult c = noise_free_case(config, K, x, ctx, GSPrecisionPolicy::Padded);
        out.err_gs.push_back(c.l1_gs);
        out.err_first_order.push_back(c.l1_first_order);
    }
    out.gs_constrained = fit_constrained(out.err_gs, out.Ns, 2.0);
    out.first_order_constrained = fit_constrained(out.err_first_order, out.Ns, 1.0);
    out.gs_free = fit_free(out.err_gs, out.Ns);
    out.first_order_free = fit_free(out.err_first_order, out.Ns);

    if (spec.write_files) {
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < out.Ns.size(); ++i)
            rows.push_back({out.Ns[i], out.err_gs[i], out.err_first_order[i]});
        write_csv(path_in(spec, "convergence.csv"), {}, {"N", "l1_gs", "l1_first_order"},
                  rows);

        SvgChart chart;
        chart.title = "L1 error vs N, gamma(16,16)";
        chart.x_label = "log10 N";
        chart.y_label = "log10 L1 error";
        chart.log_x = chart.log_y = true;
        chart.add({"inverted transform", "#1f6fb4", out.Ns, out.err_gs});
        chart.add({"first order", "#d62728", out.Ns, out.err_first_order});
        chart.write(path_in(spec, "convergence.svg"));

        auto manifest = base_manifest(spec, "convergence");
        manifest.emplace_back("K", std::to_string(K));
        manifest.emplace_back("gs_free_slope", std::to_string(out.gs_free.slope));
        manifest.emplace_back("first_order_free_slope",
                              std::to_string(out.first_order_free.slope));
        manifest.emplace_back("gs_constrained_C", std::to_string(out.gs_constrained.C));
        manifest.emplace_back("first_order_constrained_C",
                              std::to_string(out.first_order_constrained.C));
        manifest.emplace_back("gs_constrained_residual",
                              std::to_string(out.gs_constrained.residual));
        manifest.emplace_back("first_order_constrained_residual",
                              std::to_string(out.first_order_constrained.residual));
        write_manifest(path_in(spec, "convergence_manifest.txt"), manifest);
    }
    return out;
}

SmallVariabilityResult run_small_variability(const ExperimentSpec& spec) {
    const int K = spec.K > 0 ? spec.K : 64;
    const PrecisionContext ctx{spec.digits};
    const std::vector<std::pair<double, double>> laws = {
        {100, 120}, {225, 200}, {324, 330}, {400, 500}};

    SmallVariabilityResult out;
    auto manifest = base_manifest(spec, "small_variability");
    manifest.emplace_back("K", std::to_string(K));
    for (auto [ell, beta] : laws) {
        ModelConfig config = spec.config;
        config.n0 = InitialDistribution::gamma(ell, beta);
        const auto x = default_x_grid(config.n0);
        CaseResult c = noise_free_case(config, K, x, ctx, GSPrecisionPolicy::Padded);
        out.cv.push_back(1.0 / std::sqrt(ell));
        out.negative_mass.push_back(c.gs.negative_mass());
        out.mode_error.push_back(
            std::abs(mode_location(c.x, c.gs.values) - mode_location(c.x, c.truth)));
        if (spec.write_files) {
            write_case_csv(spec, "small_variability_" + gamma_label(ell, beta) + ".csv", c);
            write_case_svg(spec, "small_variability_" + gamma_label(ell, beta) + ".svg", c);
        }
        manifest.emplace_back(c.label + ".cv", std::to_string(out.cv.back()));
        manifest.emplace_back(c.label + ".negative_mass",
                              std::to_string(out.negative_mass.back()));
        manifest.emplace_back(c.label + ".mode_error", std::to_string(out.mode_error.back()));
        out.cases.push_back(std::move(c));
    }
    if (spec.write_files)
        write_manifest(path_in(spec, "small_variability_manifest.txt"), manifest);
    return out;
}

NoisyResult run_noisy(const ExperimentSpec& spec) {
    const PrecisionContext ctx{spec.digits};

    struct Setup {
        std::string label;
        InitialDistribution n0;
        std::size_t n_d;
    };
    std::vector<Setup> setups;
    if (spec.n_d > 0) {
        setups.push_back({gamma_label(spec.config.n0.param1(), spec.config.n0.param2()),
                          spec.config.n0, spec.n_d});
    } else {
        setups = {
            {"gamma(9,12)", InitialDistribution::gamma(9, 12), 30},
            {"gamma(9,12)", InitialDistribution::gamma(9, 12), 300},
            {"gamma(9,12)", InitialDistribution::gamma(9, 12), 3000},
            {"gamma(25,30)", InitialDistribution::gamma(25, 30), 300},
            {"weibull(11,2)", InitialDistribution::weibull(11, 2), 300},
            {"nakagami(6,4)", InitialDistribution::nakagami(6, 4), 300},
            {"mixture", InitialDistribution::mixture(
                            {0.5, 0.5}, {InitialDistribution::gamma(8, 8),
                                         InitialDistribution::gamma(11, 3)}),
             300},
        };
    }

    NoisyResult out;
    auto manifest = base_manifest(spec, "noisy");
    for (const auto& setup : setups) {
        ModelConfig config = spec.config;
        config.n0 = setup.n0;
        const auto x = default_x_grid(config.n0);
        const SenescenceSample sample =
            sample_senescence_times(config, setup.n_d, spec.seed);

        NoisyCase nc;
        const BandwidthResult bw =
            select_bandwidth(sample, setup.n_d, spec.bandwidth, &nc.bandwidth_method);
        const int K = spec.K > 0 ? spec.K : suggest_K(setup.n_d);

        EstimateCurve gs = estimate_n0_from_samples(config, sample, K, bw.alpha, x, ctx);
        EstimateCurve first = estimate_n0_first_order(config, sample, bw.alpha, x);
        nc.result = make_case(setup.label, config, x, std::move(gs), std::move(first));
        nc.n_d = setup.n_d;
        nc.alpha = bw.alpha;
        nc.bandwidth_fallback = bw.fallback;
        nc.modes_gs = count_modes(nc.result.gs.values);
        nc.modes_truth = count_modes(nc.result.truth);

        const std::string stem = "noisy_" + setup.label + "_nd" + std::to_string(setup.n_d);
        if (spec.write_files) {
            write_case_csv(spec, stem + ".csv", nc.result);
            write_case_svg(spec, stem + ".svg", nc.result);
        }
        manifest.emplace_back(stem + ".K", std::to_string(K));
        manifest.emplace_back(stem + ".alpha", std::to_string(nc.alpha));
        manifest.emplace_back(stem + ".bandwidth", nc.bandwidth_method);
        manifest.emplace_back(stem + ".l1_gs", std::to_string(nc.result.l1_gs));
        manifest.emplace_back(stem + ".l1_first_order",
                              std::to_string(nc.result.l1_first_order));
        out.cases.push_back(std::move(nc));
    }
    if (spec.write_files) write_manifest(path_in(spec, "noisy_manifest.txt"), manifest);
    return out;
}

KernelCompareResult run_kernel_compare(const ExperimentSpec& spec) {
    const double a = std::log(2.0);
    KernelCompareResult out;
    auto manifest = base_manifest(spec, "kernel_compare");

    const auto p_grid = linspace(0.0, 10.0, 101);
    const auto t_grid = linspace(1e-3, 6.0, 300);
    for (double alpha : {0.2, 0.4}) {
        const double t_hi = std::exp(a + 10.0 * alpha);
        std::vector<double> L_ln(p_grid.size());
        std::vector<double> f_ln(t_grid.size());
        for (std::size_t i = 0; i < p_grid.size(); ++i) {
            const double p = p_grid[i];
            L_ln[i] = adaptive_simpson(
                [&](double t) { return std::exp(-p * t) * lognormal_density(a, alpha, t); },
                0.0, t_hi, 1e-11);
        }
        for (std::size_t i = 0; i < t_grid.size(); ++i)
            f_ln[i] = lognormal_density(a, alpha, t_grid[i]);

        SvgChart density_chart;
        {
            std::ostringstream os;
            os << "kernel densities, a=log2, alpha=" << alpha;
            density_chart.title = os.str();
        }
        density_chart.x_label = "t";
        density_chart.y_label = "density";
        density_chart.add({"log-normal", "#222222", t_grid, f_ln});

        const char* colors[] = {"#1f6fb4", "#d62728", "#2ca02c"};
        int ci = 0;
        std::vector<std::vector<double>> rows(p_grid.size());
        for (std::size_t i = 0; i < p_grid.size(); ++i) rows[i] = {p_grid[i], L_ln[i]};
        std::vector<std::string> columns = {"p", "L_lognormal"};

        for (auto variant : {GammaKernelParams::Variant::Star,
                             GammaKernelParams::Variant::DoubleStar,
                             GammaKernelParams::Variant::TripleStar}) {
            const GammaKernelParams params = gamma_kernel_params(a, alpha, variant);
            KernelCompareCase kc;
            kc.variant = variant_name(variant);
            kc.alpha = alpha;
            std::vector<double> gaps(p_grid.size());
            for (std::size_t i = 0; i < p_grid.size(); ++i) {
                const double Lg = std::pow(1.0 + p_grid[i] / params.beta_star,
                                           -params.ell_star);
                gaps[i] = std::abs(Lg - L_ln[i]);
                kc.max_abs_gap = std::max(kc.max_abs_gap, gaps[i]);
                if (L_ln[i] > 0.0)
                    kc.max_rel_gap = std::max(kc.max_rel_gap, gaps[i] / L_ln[i]);
                rows[i].push_back(Lg);
            }
            columns.push_back(std::string("L_") + kc.variant);

            std::vector<double> fg(t_grid.size());
            for (std::size_t i = 0; i < t_grid.size(); ++i)
                fg[i] = gamma_density(params.ell_star, params.beta_star, t_grid[i]);
            density_chart.add({kc.variant, colors[ci++ % 3], t_grid, fg});

            std::ostringstream key;
            key << kc.variant << "_alpha" << alpha;
            manifest.emplace_back(key.str() + ".max_abs_gap",
                                  std::to_string(kc.max_abs_gap));
            manifest.emplace_back(key.str() + ".max_rel_gap",
                                  std::to_string(kc.max_rel_gap));
            out.cases.push_back(std::move(kc));
        }
        if (spec.write_files) {
            std::ostringstream stem;
            stem << "kernel_compare_alpha" << alpha;
            write_csv(path_in(spec, stem.str() + "_laplace.csv"), {}, columns, rows);
            density_chart.write(path_in(spec, stem.str() + "_densities.svg"));
        }
    }
    if (spec.write_files)
        write_manifest(path_in(spec, "kernel_compare_manifest.txt"), manifest);
    return out;
}

std::vector<LaplaceSetResult> run_laplace_set(const ExperimentSpec& spec) {
    ModelConfig config;
    config.b = 1.0;
    config.N = 40.0;
    config.law = ShorteningLaw::uniform(1.0);

    std::vector<LaplaceSetResult> out;
    auto manifest = base_manifest(spec, "laplace_set");
    // The region's boundary parabola Re q_N = beta_r reaches |Im p| ~ 31
    // inside this Re window at N=40, so the raster must extend past it to
    // show that no vertical line is fully contained.
    const auto re_axis = linspace(-6.0, 2.0, 241);
    const auto im_axis = linspace(-40.0, 40.0, 321);

    for (auto [alpha_r, beta_r] : std::vector<std::pair<double, double>>{{-1, -3}, {-2, -1}}) {
        LaplaceSetResult r;
        r.alpha_r = alpha_r;
        r.beta_r = beta_r;
        r.re = re_axis;
        r.im = im_axis;
        r.in.assign(re_axis.size() * im_axis.size(), 0);
        for (std::size_t j = 0; j < im_axis.size(); ++j)
            for (std::size_t i = 0; i < re_axis.size(); ++i) {
                const Complex p(re_axis[i], im_axis[j]);
                const bool member =
                    re_axis[i] > alpha_r && q_N(config, p).real() > beta_r;
                r.in[j * re_axis.size() + i] = member ? 1 : 0;
            }
        for (std::size_t j = 0; j < im_axis.size() && r.symmetric; ++j)
            for (std::size_t i = 0; i < re_axis.size(); ++i)
                if (r.in[j * re_axis.size() + i] !=
                    r.in[(im_axis.size() - 1 - j) * re_axis.size() + i]) {
                    r.symmetric = false;
                    break;
                }
        for (std::size_t i = 0; i < re_axis.size() && !r.contains_vertical_line; ++i) {
            bool full = true;
            for (std::size_t j = 0; j < im_axis.size(); ++j)
                if (!r.in[j * re_axis.size() + i]) { full = false; break; }
            r.contains_vertical_line = full;
        }

        if (spec.write_files) {
            // Render the membership mask as the region between the boundary
            // curves Re q_N(x+iy) = beta_r, plus the vertical cut Re p = alpha_r.
            SvgChart chart;
            std::ostringstream title;
            title << "validity region, alpha=" << alpha_r << ", beta=" << beta_r;
            chart.title = title.str();
            chart.x_label = "Re p";
            chart.y_label = "Im p";
            std::vector<double> bx, by_hi, by_lo;
            const HeatKernelParams hk = heat_kernel_params(config);
            for (double x : re_axis) {
                // Re q_N = mu x + (sigmaN2/2)(x^2 - y^2) > beta_r
                // <=> y^2 < x^2 + (2/sigmaN2)(mu x - beta_r).
                const double y2 = x * x + 2.0 * (hk.mu * x - beta_r) / hk.sigmaN2;
                if (y2 < 0.0) continue;
                bx.push_back(x);
                by_hi.push_back(std::sqrt(y2));
                by_lo.push_back(-std::sqrt(y2));
            }
            chart.add({"boundary +", "#1f6fb4", bx, by_hi});
            chart.add({"boundary -", "#1f6fb4", bx, by_lo});
            chart.add({"Re p = alpha", "#d62728", {alpha_r, alpha_r}, {-10.0, 10.0}});
            std::ostringstream stem;
            stem << "laplace_set_a" << alpha_r << "_b" << beta_r;
            chart.write(path_in(spec, stem.str() + ".svg"));

            std::vector<std::vector<double>> rows;
            for (std::size_t j = 0; j < im_axis.size(); ++j)
                for (std::size_t i = 0; i < re_axis.size(); ++i)
                    rows.push_back({re_axis[i], im_axis[j],
                                    double(r.in[j * re_axis.size() + i])});
            write_csv(path_in(spec, stem.str() + ".csv"), {}, {"re", "im", "member"}, rows);
            manifest.emplace_back(stem.str() + ".symmetric",
                                  r.symmetric ? "true" : "false");
            manifest.emplace_back(stem.str() + ".contains_vertical_line",
                                  r.contains_vertical_line ? "true" : "false");
        }
        out.push_back(std::move(r));
    }
    if (spec.write_files) write_manifest(path_in(spec, "laplace_set_manifest.txt"), manifest);
    return out;
}

RoundoffResult run_roundoff(const ExperimentSpec& spec) {
    const int K = spec.K > 0 ? spec.K : 36;
    const std::size_t n_d = spec.n_d > 0 ? spec.n_d : 300;

    RoundoffResult out;
    auto manifest = base_manifest(spec, "roundoff");
    manifest.emplace_back("K", std::to_string(K));
    manifest.emplace_back("n_d", std::to_string(n_d));
    manifest.emplace_back("policy", "raw");

    const std::vector<std::pair<double, double>> laws = {{9, 12}, {25, 30}};
    for (auto [ell, beta] : laws) {
        ModelConfig config = spec.config;
        config.n0 = InitialDistribution::gamma(ell, beta);
        const auto x = default_x_grid(config.n0);
        std::vector<double> truth;
        for (double xi : x) truth.push_back(config.n0.density(xi));
        const double tv_truth = total_variation(truth);

        const SenescenceSample sample = sample_senescence_times(config, n_d, spec.seed);
        std::string method;
        const BandwidthResult bw = select_bandwidth(sample, n_d, spec.bandwidth, &method);

        for (unsigned digits : {16u, 200u}) {
            EstimateCurve est =
                estimate_n0_from_samples(config, sample, K, bw.alpha, x,
                                         PrecisionContext{digits}, GSPrecisionPolicy::Raw);
            RoundoffCase rc;
            rc.label = gamma_label(ell, beta) + "_sampled";
            rc.digits = digits;
            rc.tv_excess = total_variation(est.values) - tv_truth;
            rc.negative_mass = est.negative_mass();
            rc.precision_exhausted = est.precision_exhausted;

            const std::string stem =
                "roundoff_" + gamma_label(ell, beta) + "_d" + std::to_string(digits);
            if (spec.write_files) {
                std::vector<std::vector<double>> rows;
                for (std::size_t i = 0; i < x.size(); ++i)
                    rows.push_back({x[i], truth[i], est.values[i]});
                write_csv(path_in(spec, stem + ".csv"),
                          {"digits=" + std::to_string(digits)},
                          {"x", "truth", "estimate"}, rows);
                SvgChart chart;
                chart.title = stem;
                chart.x_label = "x";
                chart.y_label = "density";
                chart.add({"truth", "#222222", x, truth});
                chart.add({"estimate", "#1f6fb4", x, est.values});
                chart.write(path_in(spec, stem + ".svg"));
            }
            manifest.emplace_back(stem + ".tv_excess", std::to_string(rc.tv_excess));
            manifest.emplace_back(stem + ".negative_mass",
                                  std::to_string(rc.negative_mass));
            manifest.emplace_back(stem + ".precision_exhausted",
                                  rc.precision_exhausted ? "true" : "false");
            out.cases.push_back(std::move(rc));
        }
    }

    // Control: same K at 200 digits on the exact transform stays clean.
    {
        ModelConfig config = spec.config;
        config.n0 = InitialDistribution::gamma(9, 12);
        const auto x = default_x_grid(config.n0);
        std::vector<double> truth;
        for (double xi : x) truth.push_back(config.n0.density(xi));
        EstimateCurve est = estimate_n0_noise_free(config, K, x, PrecisionContext{200},
                                                   GSPrecisionPolicy::Raw);
        RoundoffCase rc;
        rc.label = "gamma(9,12)_exact";
        rc.digits = 200;
        rc.tv_excess = total_variation(est.values) - total_variation(truth);
        rc.negative_mass = est.negative_mass();
        rc.precision_exhausted = est.precision_exhausted;
        manifest.emplace_back("exact_d200.tv_excess", std::to_string(rc.tv_excess));
        out.cases.push_back(std::move(rc));
    }
    if (spec.write_files) write_manifest(path_in(spec, "roundoff_manifest.txt"), manifest);
    return out;
}

}  // namespace teloinv
