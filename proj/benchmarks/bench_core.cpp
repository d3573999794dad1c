#include <benchmark/benchmark.h>

#include "teloinv/bell.hpp"
#include "teloinv/gaver_stehfest.hpp"
#include "teloinv/laplace.hpp"
#include "teloinv/model.hpp"

namespace {

using namespace teloinv;

void BM_gs_weights(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto plan = gs_weights(K, PrecisionContext{50});
        benchmark::DoNotOptimize(plan.weights.data());
    }
}
BENCHMARK(BM_gs_weights)->Arg(16)->Arg(36)->Arg(64);

void BM_cemetery_assembly(benchmark::State& state) {
    ScopedPrecision scope(200);
    ModelConfig config;
    config.n0 = InitialDistribution::gamma(static_cast<double>(state.range(0)), 16.0);
    for (auto _ : state) {
        auto cem = explicit_cemetery_laplace(config);
        benchmark::DoNotOptimize(cem.a.data());
    }
}
BENCHMARK(BM_cemetery_assembly)->Arg(9)->Arg(25)->Arg(49);

void BM_cemetery_eval(benchmark::State& state) {
    ScopedPrecision scope(200);
    ModelConfig config;
    const auto cem = explicit_cemetery_laplace(config);
    const Real p("1.5");
    for (auto _ : state) {
        Real v = cem.eval(p);
        benchmark::DoNotOptimize(&v);
    }
}
BENCHMARK(BM_cemetery_eval);

void BM_gs_invert_point(benchmark::State& state) {
    ScopedPrecision scope(50);
    ModelConfig config;
    const auto plan = gs_weights(static_cast<int>(state.range(0)), PrecisionContext{50});
    const auto cem = explicit_cemetery_laplace(config);
    const auto L = [&](const Real& p) { return cem.eval(p); };
    for (auto _ : state) {
        Real v = gs_invert(L, Real(2), plan);
        benchmark::DoNotOptimize(&v);
    }
}
BENCHMARK(BM_gs_invert_point)->Arg(16)->Arg(64);

void BM_bell_partial_table(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<Real> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = Real(i + 1);
    for (auto _ : state) {
        auto table = bell_partial_table(n, xs);
        benchmark::DoNotOptimize(table.data());
    }
}
BENCHMARK(BM_bell_partial_table)->Arg(10)->Arg(25)->Arg(48);

}  // namespace

BENCHMARK_MAIN();
