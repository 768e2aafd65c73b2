#pragma once

#include <vector>

#include "spdelab/domain.hpp"
#include "spdelab/fields.hpp"

namespace spde {

// Result of checking the boundary-tangency condition n(x) . sigma^{.k} = 0 on
// the physical boundary. pass <=> max_residual <= tol.
struct CompatibilityReport {
    double max_residual = 0.0;
    double tol = 0.0;
    double worst_x1 = 0.0, worst_x2 = 0.0;
    double worst_t = 0.0;
    int worst_mode = -1;
    bool pass = true;
};

// Residual = max over physical boundary points x time samples x modes of
// |sum_i n^i(x) sigma^{ik}(t, x)|. Truncation walls of half_* domains are not
// part of the physical boundary and are skipped.
CompatibilityReport check_compatibility(const CoefficientSet& coeffs, const Grid& grid,
                                        const std::vector<double>& time_samples, double tol);

}  // namespace spde
