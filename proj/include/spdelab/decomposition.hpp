#pragma once

#include "spdelab/solver.hpp"

namespace spde {

// Constructive pipeline for the half-space model problem
//   du = (a^{ij}(t) u_{ij} + f) dt + (sigma^{ik}(t) u_i + g^k) dW^k,  u|_{x1=0} = 0,
// with x-independent sigma whose first row vanishes:
//   (1) u_hat: heat-type equation  d u_hat = K lap u_hat dt + (sigma^{ik} u_hat_i + g^k) dW^k
//       solved on the odd-extended symmetric grid and restricted back;
//   (2) correction f_tilde = f - (K delta^{ij} - a^{ij}) u_hat_{ij};
//   (3) xi_t = int_0^t sigma(s) dW_s (first component 0);
//   (4) pathwise parabolic solve  dv/dt = (a - sigma sigma^T / 2) v_{ij} + f_tilde(t, x - xi_t);
//   (5) u_tilde(t, x) = v(t, x + xi_t);
//   (6) u = u_hat + u_tilde.

// Step (1) as a standalone operation. Uses coeffs.sigma / coeffs.g; b, c, nu
// and f are required to vanish. g must have zero trace on {x1 = 0}. When
// extended_out is given it receives the trajectory on the symmetric grid.
SolutionField solve_heat_reflection(const CoefficientSet& coeffs, double K_upper,
                                    const Grid& grid_half, const TimeGrid& tg,
                                    const WienerBundle& bundle, const SolveOptions& opts = {},
                                    SolutionField* extended_out = nullptr);

// Step (4) as a standalone operation with forcing given as a field of (t, x).
// Forcing is evaluated at translated points via linear interpolation along x2
// (xi has zero first component), zero beyond the x2 truncation walls.
SolutionField solve_random_pde(const ScalarFn& f_tilde, const CoefficientSet& coeffs,
                               const TranslationPath& xi, const Grid& grid_half,
                               const TimeGrid& tg, const std::vector<double>& v0,
                               bool allow_degenerate = false, const SolveOptions& opts = {});

// v evaluated at x + xi_t (steps (5)); linear interpolation along x2, zero
// outside the truncated domain. xi must have zero first component.
std::vector<double> translate_slice(const std::vector<double>& v, const Grid& grid,
                                    double shift_x2);
SolutionField translate_field(const SolutionField& v, const TranslationPath& xi, const Grid& grid);

struct DecompositionResult {
    SolutionField u;
    TranslationPath xi;
    // max over steps of |f_tilde - f|_inf relative to max |f|_inf; large values
    // mean the correction term is dominated by stencil noise on u_hat.
    double correction_ratio = 0.0;
    bool correction_flagged = false;
};

// Full pipeline (1)-(6), advanced in one interleaved time loop. u0 enters as
// initial data of the random PDE (the heat part starts from zero).
DecompositionResult solve_decomposition(const CoefficientSet& coeffs, double K_upper,
                                        const Grid& grid_half, const TimeGrid& tg,
                                        const WienerBundle& bundle, const std::vector<double>& u0,
                                        bool allow_degenerate = false,
                                        const SolveOptions& opts = {});

// sigma^{ik}(t_m) sampled at a fixed reference interior point, layout
// [m*dim*K + i*K + k]; the construction applies to x-independent sigma.
std::vector<double> sample_sigma_series(const CoefficientSet& coeffs, const Grid& grid,
                                        const TimeGrid& tg);

}  // namespace spde
