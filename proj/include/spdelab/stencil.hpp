#pragma once

#include <vector>

#include "spdelab/domain.hpp"

namespace spde {

enum class StencilOp { d1, d2, d11, d22, d12, laplacian };

// Second-order central differences evaluated at interior points (other
// entries are 0). Fields must carry values on interior and boundary points;
// on our grids every interior point has a full set of in-domain neighbours,
// so one code path covers the disk's cut cells too.
std::vector<double> apply_stencil(const std::vector<double>& field, StencilOp op, const Grid& grid);

// Per-point kernels for solver inner loops. `s` is the flat-index stride of
// an axis-1 neighbour (grid.npts[1]); axis-2 neighbours are +-1.
namespace stencil {

inline double d1(const double* f, int idx, int s, double inv2h) {
    return (f[idx + s] - f[idx - s]) * inv2h;
}
inline double d2(const double* f, int idx, double inv2h) {
    return (f[idx + 1] - f[idx - 1]) * inv2h;
}
inline double d11(const double* f, int idx, int s, double invh2) {
    return (f[idx + s] - 2.0 * f[idx] + f[idx - s]) * invh2;
}
inline double d22(const double* f, int idx, double invh2) {
    return (f[idx + 1] - 2.0 * f[idx] + f[idx - 1]) * invh2;
}
inline double d12(const double* f, int idx, int s, double inv4h1h2) {
    return (f[idx + s + 1] - f[idx + s - 1] - f[idx - s + 1] + f[idx - s - 1]) * inv4h1h2;
}

}  // namespace stencil

}  // namespace spde
