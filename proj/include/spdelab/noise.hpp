#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "spdelab/time_grid.hpp"

namespace spde {

using SeedPair = std::pair<uint64_t, uint64_t>;  // (master seed, path index)

// Discrete Wiener increments for one sample path, truncated to `modes`
// driving processes. increments[k*num_steps + m] is W^k(t_{m+1}) - W^k(t_m),
// a Gaussian(0, dt) draw keyed by (master, path, k, m).
struct WienerBundle {
    int modes = 0;
    int num_steps = 0;
    double dt = 0.0;
    uint64_t master_seed = 0;
    uint64_t path_index = 0;
    std::vector<double> increments;

    double dW(int mode, int step) const { return increments[static_cast<size_t>(mode) * num_steps + step]; }
};

WienerBundle sample_wiener_bundle(SeedPair seed, int modes, const TimeGrid& grid);

// Aggregate groups of `factor` consecutive increments. Produces the bundle a
// coarser time grid would see along the same Brownian path; used by
// refinement-coupled comparisons. num_steps must be divisible by factor.
WienerBundle coarsen_bundle(const WienerBundle& fine, int factor);

// Translation process xi_t^i = sum over steps of sigma^{ik}(t_m) dW_m^k,
// left-endpoint (Ito) quadrature, xi_0 = 0. values[(m)*dim + i].
struct TranslationPath {
    int dim = 0;
    int num_steps = 0;
    std::vector<double> values;  // (num_steps+1) x dim
    bool first_component_zero = false;

    double value(int m, int i) const { return values[static_cast<size_t>(m) * dim + i]; }
    double max_abs() const;
};

// sigma_series: num_steps x dim x modes, layout [m*dim*K + i*K + k], sigma
// evaluated at a single spatial reference point (the construction applies to
// x-independent sigma).
TranslationPath translation_path(const std::vector<double>& sigma_series, int dim,
                                 const WienerBundle& bundle);

}  // namespace spde
