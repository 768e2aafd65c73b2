#include "spdelab/noise.hpp"

#include <cmath>
#include <cstdlib>

#include "spdelab/errors.hpp"
#include "spdelab/philox.hpp"

namespace spde {

WienerBundle sample_wiener_bundle(SeedPair seed, int modes, const TimeGrid& grid) {
    if (modes < 0) throw config_error("sample_wiener_bundle: modes must be >= 0");
    if (grid.num_steps < 1 || !(grid.dt > 0.0))
        throw config_error("sample_wiener_bundle: invalid time grid");

    WienerBundle b;
    b.modes = modes;
    b.num_steps = grid.num_steps;
    b.dt = grid.dt;
    b.master_seed = seed.first;
    b.path_index = seed.second;
    b.increments.resize(static_cast<size_t>(modes) * grid.num_steps);

    const double scale = std::sqrt(grid.dt);
    for (int k = 0; k < modes; ++k) {
        double* row = b.increments.data() + static_cast<size_t>(k) * grid.num_steps;
        for (int m = 0; m < grid.num_steps; ++m)
            row[m] = scale * gaussian_at(seed.first, seed.second, static_cast<uint32_t>(k),
                                         static_cast<uint32_t>(m));
    }
    return b;
}

WienerBundle coarsen_bundle(const WienerBundle& fine, int factor) {
    if (factor < 1 || fine.num_steps % factor != 0)
        throw contract_error("coarsen_bundle: num_steps not divisible by factor");
    WienerBundle c;
    c.modes = fine.modes;
    c.num_steps = fine.num_steps / factor;
    c.dt = fine.dt * factor;
    c.master_seed = fine.master_seed;
    c.path_index = fine.path_index;
    c.increments.resize(static_cast<size_t>(c.modes) * c.num_steps);
    for (int k = 0; k < c.modes; ++k) {
        for (int m = 0; m < c.num_steps; ++m) {
            double s = 0.0;
            for (int r = 0; r < factor; ++r) s += fine.dW(k, m * factor + r);
            c.increments[static_cast<size_t>(k) * c.num_steps + m] = s;
        }
    }
    return c;
}

double TranslationPath::max_abs() const {
    double mx = 0.0;
    for (double v : values) mx = std::max(mx, std::abs(v));
    return mx;
}

TranslationPath translation_path(const std::vector<double>& sigma_series, int dim,
                                 const WienerBundle& bundle) {
    const int M = bundle.num_steps;
    const int K = bundle.modes;
    if (sigma_series.size() != static_cast<size_t>(M) * dim * K)
        throw contract_error("translation_path: sigma_series shape does not match bundle");

    TranslationPath xi;
    xi.dim = dim;
    xi.num_steps = M;
    xi.values.assign(static_cast<size_t>(M + 1) * dim, 0.0);

    bool comp1_zero = true;
    for (int m = 0; m < M; ++m) {
        for (int i = 0; i < dim; ++i) {
            double inc = 0.0;
            for (int k = 0; k < K; ++k) {
                double s = sigma_series[(static_cast<size_t>(m) * dim + i) * K + k];
                if (i == 0 && s != 0.0) comp1_zero = false;
                inc += s * bundle.dW(k, m);
            }
            xi.values[static_cast<size_t>(m + 1) * dim + i] =
                xi.values[static_cast<size_t>(m) * dim + i] + inc;
        }
    }
    xi.first_component_zero = comp1_zero;
    return xi;
}

}  // namespace spde
