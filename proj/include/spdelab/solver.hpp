#pragma once

#include <functional>
#include <vector>

#include "spdelab/banded.hpp"
#include "spdelab/domain.hpp"
#include "spdelab/fields.hpp"
#include "spdelab/noise.hpp"
#include "spdelab/time_grid.hpp"

namespace spde {

enum class Pipeline { direct, decomposition, picard };

const char* pipeline_name(Pipeline p);

struct DirichletData {
    ScalarFn beta;
    bool is_zero = true;

    static DirichletData zero() {
        DirichletData d;
        d.beta = zero_fn();
        d.is_zero = true;
        return d;
    }
    static DirichletData of(ScalarFn fn) {
        DirichletData d;
        d.beta = std::move(fn);
        d.is_zero = false;
        return d;
    }
};

using StepObserver = std::function<void(int m, double t, const std::vector<double>& u)>;

// Fills the forcing arrays for step m (F: grid.total(), G: grid.total()*K).
// Used by the Picard iteration to freeze reactions at the previous iterate.
using ForcingProvider =
    std::function<void(int m, double t, std::vector<double>& F, std::vector<double>& G)>;

struct SolveOptions {
    int store_stride = 1;  // 1: every step; s: every s-th plus first/last; 0: first/last only
    StepObserver observer;
    ForcingProvider forcing_override;
    bool track_wall_shadow = false;  // ratio of |u| near truncation walls to max|u|
};

// One sample path of the discrete solution. Boundary entries of every stored
// slice equal the Dirichlet data at that step by construction. A NaN/Inf
// aborts the path and marks it poisoned instead of throwing.
struct SolutionField {
    Pipeline scheme = Pipeline::direct;
    std::vector<int> steps;
    std::vector<std::vector<double>> values;
    bool poisoned = false;
    int poisoned_step = -1;
    double wall_shadow_ratio = 0.0;

    const std::vector<double>& at_step(int m) const;
    const std::vector<double>& final_slice() const;
    bool has_step(int m) const;
};

// One semi-implicit Euler-Maruyama step: the a^{ij} d_i d_j block is treated
// implicitly, lower-order drift and the Ito noise increments explicitly with
// left-endpoint evaluation. Boundary rows enforce beta(t_m + dt).
std::vector<double> step_direct(const std::vector<double>& u_m, const CoefficientSet& coeffs,
                                const Grid& grid, double t_m, const std::vector<double>& dW,
                                double dt, const DirichletData& bc);

// Full trajectory of the direct scheme. u0 lives on the full lattice; its
// boundary entries are replaced by beta(0).
SolutionField solve_direct(const CoefficientSet& coeffs, const Grid& grid, const TimeGrid& tg,
                           const WienerBundle& bundle, const std::vector<double>& u0,
                           const DirichletData& bc, const SolveOptions& opts = {});

// Shared implementation machinery (also used by the decomposition pipeline).
namespace detail {

// Per-point diffusion tensor used to assemble (I - dt * a^{ij} d_i d_j).
using DiffusionAt = std::function<void(int idx, double& a11, double& a12, double& a22)>;

void assemble_implicit_matrix(BandedSystem& sys, const Grid& grid, double dt,
                              const DiffusionAt& diffusion);

bool all_finite(const std::vector<double>& v);

// Evaluate just the forcing slots at time t (fixed-coefficient variants).
void eval_forcing(const CoefficientSet& coeffs, double t, const Grid& grid,
                  const std::vector<double>* u_current, std::vector<double>& F,
                  std::vector<double>& G);

}  // namespace detail

}  // namespace spde
