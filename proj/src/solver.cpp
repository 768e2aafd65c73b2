#include "spdelab/solver.hpp"

#include <algorithm>
#include <cmath>

#include "spdelab/stencil.hpp"

namespace spde {

const char* pipeline_name(Pipeline p) {
    switch (p) {
        case Pipeline::direct: return "direct";
        case Pipeline::decomposition: return "decomposition";
        case Pipeline::picard: return "picard";
    }
    return "?";
}

const std::vector<double>& SolutionField::at_step(int m) const {
    auto it = std::lower_bound(steps.begin(), steps.end(), m);
    if (it == steps.end() || *it != m) throw contract_error("SolutionField: step not stored");
    return values[static_cast<size_t>(it - steps.begin())];
}

bool SolutionField::has_step(int m) const {
    return std::binary_search(steps.begin(), steps.end(), m);
}

const std::vector<double>& SolutionField::final_slice() const {
    if (values.empty()) throw contract_error("SolutionField: empty");
    return values.back();
}

namespace detail {

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

void assemble_implicit_matrix(BandedSystem& sys, const Grid& grid, double dt,
                              const DiffusionAt& diffusion) {
    sys.zero();
    const int s = grid.npts[1];
    const double invh1sq = 1.0 / (grid.h[0] * grid.h[0]);
    const double invh2sq = grid.dim == 2 ? 1.0 / (grid.h[1] * grid.h[1]) : 0.0;
    const double inv2h1h2 = grid.dim == 2 ? 1.0 / (2.0 * grid.h[0] * grid.h[1]) : 0.0;

    for (int idx = 0; idx < grid.total(); ++idx) {
        if (grid.cls[idx] != PointClass::interior) {
            sys.set(idx, idx, 1.0);
            continue;
        }
        double a11, a12, a22;
        diffusion(idx, a11, a12, a22);
        double diag = 1.0 + 2.0 * dt * a11 * invh1sq;
        sys.add(idx, idx - s, -dt * a11 * invh1sq);
        sys.add(idx, idx + s, -dt * a11 * invh1sq);
        if (grid.dim == 2) {
            diag += 2.0 * dt * a22 * invh2sq;
            sys.add(idx, idx - 1, -dt * a22 * invh2sq);
            sys.add(idx, idx + 1, -dt * a22 * invh2sq);
            if (a12 != 0.0) {
                double w = dt * a12 * inv2h1h2;
                sys.add(idx, idx + s + 1, -w);
                sys.add(idx, idx - s - 1, -w);
                sys.add(idx, idx + s - 1, w);
                sys.add(idx, idx - s + 1, w);
            }
        }
        sys.set(idx, idx, diag);
    }
    sys.factor();
}

void eval_forcing(const CoefficientSet& coeffs, double t, const Grid& grid,
                  const std::vector<double>* u_current, std::vector<double>& F,
                  std::vector<double>& G) {
    const int K = coeffs.modes;
    F.assign(grid.total(), 0.0);
    G.assign(static_cast<size_t>(grid.total()) * K, 0.0);
    for (int idx = 0; idx < grid.total(); ++idx) {
        if (grid.cls[idx] == PointClass::exterior) continue;
        double x1 = grid.x1_of(idx), x2 = grid.x2_of(idx);
        if (coeffs.flags.semilinear_f)
            F[idx] = coeffs.f_reaction(t, x1, x2, (*u_current)[idx]);
        else
            F[idx] = coeffs.f(t, x1, x2);
        for (int k = 0; k < K; ++k) {
            double gv = coeffs.flags.semilinear_g
                            ? coeffs.g_reaction[k](t, x1, x2, (*u_current)[idx])
                            : coeffs.g[k](t, x1, x2);
            G[static_cast<size_t>(idx) * K + k] = gv;
        }
    }
}

}  // namespace detail

namespace {

// Stepper with persistent factorization and cached static coefficient slots.
class DirectStepper {
  public:
    DirectStepper(const CoefficientSet& cs, const Grid& g, double dt)
        : cs_(cs), g_(g), dt_(dt),
          sys_(g.total(), g.dim == 2 ? g.npts[1] + 1 : 1, g.dim == 2 ? g.npts[1] + 1 : 1) {
        if (cs.semilinear())
            throw contract_error("direct scheme handles fixed forcing only; reactions go through "
                                 "the Picard iteration");
        lower_order_static_ = !cs.flags.time_dep_a && !cs.flags.time_dep_b &&
                              !cs.flags.time_dep_c && !cs.flags.time_dep_sigma &&
                              !cs.flags.time_dep_nu;
        samp_static_ = lower_order_static_ && !cs.flags.time_dep_f && !cs.flags.time_dep_g;
        rhs_.assign(g.total(), 0.0);
    }

    void step(std::vector<double>& u, int m, double t_m, double t_next, const double* dW,
              const DirichletData& bc, const std::vector<double>* F_over,
              const std::vector<double>* G_over) {
        refresh_sample(t_m);
        if (!factored_ || cs_.flags.time_dep_a) {
            detail::assemble_implicit_matrix(sys_, g_, dt_, [this](int idx, double& a11,
                                                                   double& a12, double& a22) {
                a11 = samp_.A[idx * 3 + 0];
                a12 = samp_.A[idx * 3 + 1];
                a22 = samp_.A[idx * 3 + 2];
            });
            factored_ = true;
        }

        const int K = cs_.modes;
        const int s = g_.npts[1];
        const double inv2h1 = 0.5 / g_.h[0];
        const double inv2h2 = g_.dim == 2 ? 0.5 / g_.h[1] : 0.0;
        const double* F = F_over ? F_over->data() : samp_.F.data();
        const double* G = G_over ? G_over->data() : samp_.G.data();
        const double* up = u.data();

        std::fill(rhs_.begin(), rhs_.end(), 0.0);
        for (int idx : g_.interior) {
            double du1 = stencil::d1(up, idx, s, inv2h1);
            double du2 = g_.dim == 2 ? stencil::d2(up, idx, inv2h2) : 0.0;
            double drift = samp_.B[idx * 2 + 0] * du1 + samp_.B[idx * 2 + 1] * du2 +
                           samp_.C[idx] * up[idx] + F[idx];
            double noise = 0.0;
            for (int k = 0; k < K; ++k) {
                double amp = samp_.Sigma[(static_cast<size_t>(idx) * g_.dim + 0) * K + k] * du1;
                if (g_.dim == 2)
                    amp += samp_.Sigma[(static_cast<size_t>(idx) * g_.dim + 1) * K + k] * du2;
                amp += samp_.Nu[static_cast<size_t>(idx) * K + k] * up[idx] +
                       G[static_cast<size_t>(idx) * K + k];
                noise += amp * dW[k];
            }
            rhs_[idx] = up[idx] + dt_ * drift + noise;
        }
        for (size_t b = 0; b < g_.boundary.size(); ++b) {
            int idx = g_.boundary[b];
            rhs_[idx] = bc.is_zero ? 0.0 : bc.beta(t_next, g_.x1_of(idx), g_.x2_of(idx));
        }
        sys_.solve(rhs_);
        u.swap(rhs_);
        (void)m;
    }

  private:
    void refresh_sample(double t) {
        if (samp_ready_ && samp_static_) return;
        if (!samp_ready_ || !lower_order_static_) {
            samp_ = evaluate_coefficients(cs_, t, g_, nullptr);
        } else {
            // only forcing changes over time
            detail::eval_forcing(cs_, t, g_, nullptr, samp_.F, samp_.G);
        }
        samp_ready_ = true;
    }

    const CoefficientSet& cs_;
    const Grid& g_;
    double dt_;
    BandedSystem sys_;
    CoeffSample samp_;
    std::vector<double> rhs_;
    bool factored_ = false;
    bool samp_ready_ = false;
    bool samp_static_ = false;
    bool lower_order_static_ = false;
};

void apply_initial_boundary(std::vector<double>& u, const Grid& grid, const DirichletData& bc) {
    for (size_t b = 0; b < grid.boundary.size(); ++b) {
        int idx = grid.boundary[b];
        u[idx] = bc.is_zero ? 0.0 : bc.beta(0.0, grid.x1_of(idx), grid.x2_of(idx));
    }
    for (int idx = 0; idx < grid.total(); ++idx)
        if (grid.cls[idx] == PointClass::exterior) u[idx] = 0.0;
}

double wall_shadow(const std::vector<double>& u, const Grid& grid) {
    // max |u| at interior points adjacent to a non-physical wall vs global max
    double near = 0.0, global = 0.0;
    const int s = grid.npts[1];
    for (int idx : grid.interior) {
        double v = std::abs(u[idx]);
        global = std::max(global, v);
        for (int nb : {idx - s, idx + s, idx - 1, idx + 1}) {
            if (nb < 0 || nb >= grid.total()) continue;
            int32_t bs = grid.bslot[nb];
            if (bs >= 0 && !grid.normals[bs].physical) {
                near = std::max(near, v);
                break;
            }
        }
    }
    return global > 0.0 ? near / global : 0.0;
}

}  // namespace

std::vector<double> step_direct(const std::vector<double>& u_m, const CoefficientSet& coeffs,
                                const Grid& grid, double t_m, const std::vector<double>& dW,
                                double dt, const DirichletData& bc) {
    if (dW.size() != static_cast<size_t>(coeffs.modes))
        throw contract_error("step_direct: dW size does not match mode count");
    DirectStepper stepper(coeffs, grid, dt);
    std::vector<double> u = u_m;
    stepper.step(u, 0, t_m, t_m + dt, dW.data(), bc, nullptr, nullptr);
    if (!detail::all_finite(u)) throw numerical_error("step_direct: non-finite state");
    return u;
}

SolutionField solve_direct(const CoefficientSet& coeffs, const Grid& grid, const TimeGrid& tg,
                           const WienerBundle& bundle, const std::vector<double>& u0,
                           const DirichletData& bc, const SolveOptions& opts) {
    if (bundle.modes != coeffs.modes)
        throw contract_error("solve_direct: bundle modes do not match coefficient set");
    if (bundle.num_steps != tg.num_steps)
        throw contract_error("solve_direct: bundle steps do not match time grid");
    if (u0.size() != static_cast<size_t>(grid.total()))
        throw contract_error("solve_direct: u0 size does not match grid");

    SolutionField out;
    out.scheme = Pipeline::direct;
    const int M = tg.num_steps;
    const int K = coeffs.modes;

    std::vector<double> u = u0;
    apply_initial_boundary(u, grid, bc);

    auto store = [&](int m, const std::vector<double>& slice) {
        bool want = m == 0 || m == M;
        if (opts.store_stride > 0 && m % opts.store_stride == 0) want = true;
        if (want) {
            out.steps.push_back(m);
            out.values.push_back(slice);
        }
    };

    store(0, u);
    if (opts.observer) opts.observer(0, 0.0, u);
    if (opts.track_wall_shadow) out.wall_shadow_ratio = wall_shadow(u, grid);

    DirectStepper stepper(coeffs, grid, tg.dt);
    std::vector<double> dW(K, 0.0);
    const bool picard_forcing = static_cast<bool>(opts.forcing_override);
    std::vector<double> F_over, G_over;

    for (int m = 0; m < M; ++m) {
        for (int k = 0; k < K; ++k) dW[k] = bundle.dW(k, m);
        double t_m = tg.time(m), t_next = tg.time(m + 1);
        if (picard_forcing) {
            opts.forcing_override(m, t_m, F_over, G_over);
            stepper.step(u, m, t_m, t_next, dW.data(), bc, &F_over, &G_over);
        } else {
            stepper.step(u, m, t_m, t_next, dW.data(), bc, nullptr, nullptr);
        }
        if (!detail::all_finite(u)) {
            out.poisoned = true;
            out.poisoned_step = m + 1;
            break;
        }
        store(m + 1, u);
        if (opts.observer) opts.observer(m + 1, t_next, u);
        if (opts.track_wall_shadow)
            out.wall_shadow_ratio = std::max(out.wall_shadow_ratio, wall_shadow(u, grid));
    }
    return out;
}

}  // namespace spde
