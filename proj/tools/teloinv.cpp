// Command-line experiment runner: each subcommand reproduces one
// figure-class experiment, writing CSV/SVG artifacts plus a key=value
// manifest that suffices to reproduce the run byte for byte.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "teloinv/config_io.hpp"
#include "teloinv/experiments.hpp"

namespace {

teloinv::ExperimentSpec build_spec(const std::string& config_path, const std::string& out,
                                   std::uint64_t seed, unsigned digits, int K,
                                   std::size_t n_d, const std::string& bandwidth) {
    teloinv::ExperimentSpec spec;
    if (!config_path.empty()) {
        const teloinv::ParsedConfig parsed = teloinv::parse_config_file(config_path);
        spec.config = parsed.model;
        spec.digits = parsed.precision_digits;
    }
    spec.out_dir = out;
    spec.seed = seed;
    if (digits > 0) spec.digits = digits;
    spec.K = K;
    spec.n_d = n_d;
    spec.bandwidth = bandwidth;
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"telomere-length inverse-problem experiment runner"};
    app.require_subcommand(1);

    std::string config_path, out = ".", bandwidth;
    std::uint64_t seed = 20240801;
    unsigned digits = 0;
    int K = 0;
    std::size_t n_d = 0;

    app.add_option("--config", config_path, "model config file (key=value)");
    app.add_option("--out", out, "output directory");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--digits", digits, "decimal precision contract");
    app.add_option("--K", K, "Gaver-Stehfest order override");
    app.add_option("--nd", n_d, "sample size override");
    app.add_option("--bandwidth", bandwidth, "nrd | sj | <numeric alpha>");

    auto* noise_free = app.add_subcommand("noise_free", "exact-transform estimation, four Gamma laws");
    auto* convergence = app.add_subcommand("convergence", "L1 error vs N with power-law fits");
    auto* small_var = app.add_subcommand("small_variability", "concentrated initial laws");
    auto* noisy = app.add_subcommand("noisy", "sampled-data estimation");
    auto* kernel = app.add_subcommand("kernel_compare", "Gamma vs log-normal kernels");
    auto* laplace_set = app.add_subcommand("laplace_set", "link-map validity region raster");
    auto* roundoff = app.add_subcommand("roundoff", "fixed-precision round-off demonstration");

    CLI11_PARSE(app, argc, argv);

    try {
        const teloinv::ExperimentSpec spec =
            build_spec(config_path, out, seed, digits, K, n_d, bandwidth);
        if (noise_free->parsed()) {
            const auto r = teloinv::run_noise_free(spec);
            for (const auto& c : r.cases)
                std::printf("%-16s L1(inverted)=%.3e  L1(first-order)=%.3e\n",
                            c.label.c_str(), c.l1_gs, c.l1_first_order);
        } else if (convergence->parsed()) {
            const auto r = teloinv::run_convergence(spec);
            std::printf("free slopes: inverted=%.3f first-order=%.3f\n", r.gs_free.slope,
                        r.first_order_free.slope);
            std::printf("constrained C: inverted=%.4g (slope 2)  first-order=%.4g (slope 1)\n",
                        r.gs_constrained.C, r.first_order_constrained.C);
        } else if (small_var->parsed()) {
            const auto r = teloinv::run_small_variability(spec);
            for (std::size_t i = 0; i < r.cases.size(); ++i)
                std::printf("%-16s cv=%.3f neg_mass=%.3e mode_err=%.3e\n",
                            r.cases[i].label.c_str(), r.cv[i], r.negative_mass[i],
                            r.mode_error[i]);
        } else if (noisy->parsed()) {
            const auto r = teloinv::run_noisy(spec);
            for (const auto& c : r.cases)
                std::printf("%-16s nd=%-5zu alpha=%.4f (%s) L1(inverted)=%.3e L1(first-order)=%.3e\n",
                            c.result.label.c_str(), c.n_d, c.alpha,
                            c.bandwidth_method.c_str(), c.result.l1_gs,
                            c.result.l1_first_order);
        } else if (kernel->parsed()) {
            const auto r = teloinv::run_kernel_compare(spec);
            for (const auto& c : r.cases)
                std::printf("%-12s alpha=%.1f max_abs_gap=%.3e max_rel_gap=%.3e\n",
                            c.variant.c_str(), c.alpha, c.max_abs_gap, c.max_rel_gap);
        } else if (laplace_set->parsed()) {
            const auto r = teloinv::run_laplace_set(spec);
            for (const auto& s : r)
                std::printf("alpha=%g beta=%g symmetric=%d vertical_line=%d\n", s.alpha_r,
                            s.beta_r, int(s.symmetric), int(s.contains_vertical_line));
        } else if (roundoff->parsed()) {
            const auto r = teloinv::run_roundoff(spec);
            for (const auto& c : r.cases)
                std::printf("%-24s digits=%-4u tv_excess=%.3e neg_mass=%.3e exhausted=%d\n",
                            c.label.c_str(), c.digits, c.tv_excess, c.negative_mass,
                            int(c.precision_exhausted));
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
