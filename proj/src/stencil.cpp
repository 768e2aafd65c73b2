#include "spdelab/stencil.hpp"

namespace spde {

std::vector<double> apply_stencil(const std::vector<double>& field, StencilOp op, const Grid& grid) {
    if (field.size() != static_cast<size_t>(grid.total()))
        throw contract_error("apply_stencil: field size does not match grid");
    if (grid.dim == 1 && (op == StencilOp::d2 || op == StencilOp::d22 || op == StencilOp::d12))
        throw contract_error("apply_stencil: axis-2 stencil on a 1-d grid");

    const int s = grid.npts[1];
    const double* f = field.data();
    const double inv2h1 = 0.5 / grid.h[0];
    const double invh1sq = 1.0 / (grid.h[0] * grid.h[0]);
    const double inv2h2 = grid.dim == 2 ? 0.5 / grid.h[1] : 0.0;
    const double invh2sq = grid.dim == 2 ? 1.0 / (grid.h[1] * grid.h[1]) : 0.0;
    const double inv4h1h2 = grid.dim == 2 ? 1.0 / (4.0 * grid.h[0] * grid.h[1]) : 0.0;

    std::vector<double> out(field.size(), 0.0);
    for (int idx : grid.interior) {
        switch (op) {
            case StencilOp::d1: out[idx] = stencil::d1(f, idx, s, inv2h1); break;
            case StencilOp::d2: out[idx] = stencil::d2(f, idx, inv2h2); break;
            case StencilOp::d11: out[idx] = stencil::d11(f, idx, s, invh1sq); break;
            case StencilOp::d22: out[idx] = stencil::d22(f, idx, invh2sq); break;
            case StencilOp::d12: out[idx] = stencil::d12(f, idx, s, inv4h1h2); break;
            case StencilOp::laplacian:
                out[idx] = stencil::d11(f, idx, s, invh1sq);
                if (grid.dim == 2) out[idx] += stencil::d22(f, idx, invh2sq);
                break;
        }
    }
    return out;
}

}  // namespace spde
