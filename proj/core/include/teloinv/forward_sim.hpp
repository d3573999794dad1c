#pragma once

#include <cstdint>
#include <vector>

#include "teloinv/grid.hpp"
#include "teloinv/model.hpp"

namespace teloinv {

/// Result of a forward solve: stored snapshots plus the boundary-flux series.
struct SolveResult {
    std::vector<GridFunction> snapshots;
    CemeterySeries cemetery;
    std::vector<double> conservation;  ///< |mass + cumulative flux - 1| per snapshot
};

/// Method-of-lines solve of the scaled jump model
///   d/dt n(t,x) = b N [ int n(t, x+v/N) g(v) dv - n(t,x) ],
///   flux(t)     = b int n(t, v/N) (1 - G(v)) dv,
/// with cubic interpolation between nodes, zero extension past x_max, and
/// classic RK4 in time. If T <= 0 the solve runs until the absorbed mass
/// reaches 1 - 1e-4. `snapshot_stride` selects every k-th accepted step
/// for storage (the flux series stores every step).
SolveResult solve_scaled_model(const ModelConfig& config, double x_max, double h, double dt,
                               double T, int snapshot_stride = 16);

/// Monte Carlo lineage sampler: draw x0 ~ n0; repeat { wait Exp(bN), shorten
/// by v/N with v ~ g } until the length goes negative; record the cumulative
/// time. Per-lineage substreams make the sample independent of ordering.
SenescenceSample sample_senescence_times(const ModelConfig& config, std::size_t n_d,
                                         std::uint64_t seed);

}  // namespace teloinv
