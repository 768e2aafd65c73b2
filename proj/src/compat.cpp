#include "spdelab/compat.hpp"

#include <cmath>

namespace spde {

CompatibilityReport check_compatibility(const CoefficientSet& coeffs, const Grid& grid,
                                        const std::vector<double>& time_samples, double tol) {
    if (time_samples.empty()) throw contract_error("check_compatibility: no time samples");
    CompatibilityReport rep;
    rep.tol = tol;

    const int K = coeffs.modes;
    const int dim = coeffs.dim;
    for (size_t b = 0; b < grid.boundary.size(); ++b) {
        const BoundaryNormal& nrm = grid.normals[b];
        if (!nrm.physical) continue;
        int idx = grid.boundary[b];
        double x1 = grid.x1_of(idx), x2 = grid.x2_of(idx);
        for (double t : time_samples) {
            for (int k = 0; k < K; ++k) {
                double dot = nrm.n1 * coeffs.sigma[static_cast<size_t>(0) * K + k](t, x1, x2);
                if (dim == 2) dot += nrm.n2 * coeffs.sigma[static_cast<size_t>(1) * K + k](t, x1, x2);
                if (!std::isfinite(dot))
                    throw numerical_error("check_compatibility: sigma evaluation failed at x1=" +
                                          std::to_string(x1) + " x2=" + std::to_string(x2));
                double r = std::abs(dot);
                if (r > rep.max_residual) {
                    rep.max_residual = r;
                    rep.worst_x1 = x1;
                    rep.worst_x2 = x2;
                    rep.worst_t = t;
                    rep.worst_mode = k;
                }
            }
        }
    }
    rep.pass = rep.max_residual <= tol;
    return rep;
}

}  // namespace spde
