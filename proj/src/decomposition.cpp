#include "spdelab/decomposition.hpp"

#include <algorithm>
#include <cmath>

#include "spdelab/stencil.hpp"

namespace spde {

namespace {

int reference_point(const Grid& grid) {
    if (grid.interior.empty()) throw contract_error("grid has no interior points");
    return grid.interior[grid.interior.size() / 2];
}

void require_zero_slot(const ScalarFn& fn, const char* name, const Grid& grid, const TimeGrid& tg) {
    for (double t : {0.0, 0.5 * tg.t_end, tg.t_end}) {
        for (int idx : {grid.interior.front(), reference_point(grid), grid.interior.back()}) {
            if (fn(t, grid.x1_of(idx), grid.x2_of(idx)) != 0.0)
                throw contract_error(std::string("decomposition model form requires ") + name +
                                     " == 0");
        }
    }
}

void require_model_form(const CoefficientSet& cs, const Grid& grid, const TimeGrid& tg,
                        bool forcing_allowed) {
    if (!cs.flags.sigma_x_independent)
        throw contract_error("decomposition requires x-independent sigma");
    if (cs.semilinear())
        throw contract_error("decomposition handles fixed forcing only");
    require_zero_slot(cs.b1, "b1", grid, tg);
    if (cs.dim == 2) require_zero_slot(cs.b2, "b2", grid, tg);
    require_zero_slot(cs.c, "c", grid, tg);
    for (int k = 0; k < cs.modes; ++k) require_zero_slot(cs.nu[k], "nu", grid, tg);
    if (!forcing_allowed) require_zero_slot(cs.f, "f", grid, tg);
}

void require_first_row_zero(const std::vector<double>& sigma_series, int dim, int K, int M) {
    for (int m = 0; m < M; ++m)
        for (int k = 0; k < K; ++k)
            if (sigma_series[(static_cast<size_t>(m) * dim + 0) * K + k] != 0.0)
                throw contract_error("decomposition requires sigma^{1k} == 0");
}

// Linear interpolation of a lattice field along x2 at x2 + shift, zero beyond
// the truncation walls.
void translate_into(std::vector<double>& out, const std::vector<double>& v, const Grid& grid,
                    double shift) {
    if (grid.dim == 1 || shift == 0.0) {
        out = v;
        return;
    }
    const int ny = grid.npts[1];
    out.assign(v.size(), 0.0);
    const double inv_h2 = 1.0 / grid.h[1];
    for (int i = 0; i < grid.npts[0]; ++i) {
        const double* col = v.data() + static_cast<size_t>(i) * ny;
        double* ocol = out.data() + static_cast<size_t>(i) * ny;
        for (int j = 0; j < ny; ++j) {
            double pos = j + shift * inv_h2;
            double fl = std::floor(pos);
            int j0 = static_cast<int>(fl);
            double frac = pos - fl;
            double left = (j0 >= 0 && j0 < ny) ? col[j0] : 0.0;
            double right = (j0 + 1 >= 0 && j0 + 1 < ny) ? col[j0 + 1] : 0.0;
            ocol[j] = (1.0 - frac) * left + frac * right;
        }
    }
}

double shift_of(const TranslationPath& xi, int m, int dim) {
    return dim == 2 ? xi.value(m, 1) : 0.0;
}

struct EffectiveDiffusion {
    // aeff = a - sigma sigma^T / 2 sampled per point at time t
    std::vector<double> vals;  // [idx*3]
    void sample(const CoefficientSet& cs, const Grid& grid, double t) {
        const int K = cs.modes;
        vals.assign(static_cast<size_t>(grid.total()) * 3, 0.0);
        for (int idx = 0; idx < grid.total(); ++idx) {
            if (grid.cls[idx] == PointClass::exterior) continue;
            double x1 = grid.x1_of(idx), x2 = grid.x2_of(idx);
            double s11 = 0.0, s12 = 0.0, s22 = 0.0;
            for (int k = 0; k < K; ++k) {
                double s1 = cs.sigma[static_cast<size_t>(0) * K + k](t, x1, x2);
                double s2 = cs.dim == 2 ? cs.sigma[static_cast<size_t>(1) * K + k](t, x1, x2) : 0.0;
                s11 += s1 * s1;
                s12 += s1 * s2;
                s22 += s2 * s2;
            }
            vals[idx * 3 + 0] = cs.a11(t, x1, x2) - 0.5 * s11;
            if (cs.dim == 2) {
                vals[idx * 3 + 1] = cs.a12(t, x1, x2) - 0.5 * s12;
                vals[idx * 3 + 2] = cs.a22(t, x1, x2) - 0.5 * s22;
            }
        }
    }
    double min_eig(const Grid& grid, int dim) const {
        double lo = std::numeric_limits<double>::infinity();
        for (int idx : grid.interior) {
            double p = vals[idx * 3 + 0], q = vals[idx * 3 + 1], r = vals[idx * 3 + 2];
            double e = dim == 1 ? p : 0.5 * (p + r) - std::sqrt(0.25 * (p - r) * (p - r) + q * q);
            lo = std::min(lo, e);
        }
        return lo;
    }
};

void check_effective_diffusion(const EffectiveDiffusion& aeff, const Grid& grid, int dim,
                               bool allow_degenerate) {
    double lo = aeff.min_eig(grid, dim);
    if (allow_degenerate ? lo < -1e-12 : lo <= 0.0)
        throw precondition_error("effective diffusion a - sigma sigma^T/2 not " +
                                 std::string(allow_degenerate ? "nonnegative" : "positive") +
                                 " (min eigenvalue " + std::to_string(lo) + ")");
}

}  // namespace

std::vector<double> sample_sigma_series(const CoefficientSet& coeffs, const Grid& grid,
                                        const TimeGrid& tg) {
    const int idx = reference_point(grid);
    const double x1 = grid.x1_of(idx), x2 = grid.x2_of(idx);
    const int K = coeffs.modes, dim = coeffs.dim, M = tg.num_steps;
    std::vector<double> series(static_cast<size_t>(M) * dim * K, 0.0);
    for (int m = 0; m < M; ++m) {
        double t = tg.time(m);
        for (int i = 0; i < dim; ++i)
            for (int k = 0; k < K; ++k)
                series[(static_cast<size_t>(m) * dim + i) * K + k] =
                    coeffs.sigma[static_cast<size_t>(i) * K + k](t, x1, x2);
    }
    return series;
}

std::vector<double> translate_slice(const std::vector<double>& v, const Grid& grid,
                                    double shift_x2) {
    if (v.size() != static_cast<size_t>(grid.total()))
        throw contract_error("translate_slice: field size does not match grid");
    std::vector<double> out;
    translate_into(out, v, grid, shift_x2);
    return out;
}

SolutionField translate_field(const SolutionField& v, const TranslationPath& xi, const Grid& grid) {
    if (!xi.first_component_zero)
        throw contract_error("translate_field: xi has nonzero first component");
    SolutionField out;
    out.scheme = v.scheme;
    out.steps = v.steps;
    out.poisoned = v.poisoned;
    out.poisoned_step = v.poisoned_step;
    out.values.resize(v.values.size());
    for (size_t i = 0; i < v.steps.size(); ++i)
        translate_into(out.values[i], v.values[i], grid, shift_of(xi, v.steps[i], grid.dim));
    return out;
}

SolutionField solve_heat_reflection(const CoefficientSet& coeffs, double K_upper,
                                    const Grid& grid_half, const TimeGrid& tg,
                                    const WienerBundle& bundle, const SolveOptions& opts) {
    require_model_form(coeffs, grid_half, tg, /*forcing_allowed=*/false);
    auto series = sample_sigma_series(coeffs, grid_half, tg);
    require_first_row_zero(series, coeffs.dim, coeffs.modes, tg.num_steps);

    // Reflected problem: drift K * Laplacian with the odd-extended g; solving
    // on the symmetric grid keeps the zero trace exact.
    Grid ext = build_extended_grid(grid_half);
    const int K = coeffs.modes;
    // odd-extended forcing, re-evaluated per step only when time dependent
    std::vector<std::vector<double>> g_ext(K);
    auto extend_g = [&](double t) {
        std::vector<double> g_half(grid_half.total(), 0.0);
        for (int k = 0; k < K; ++k) {
            for (int idx = 0; idx < grid_half.total(); ++idx)
                g_half[idx] = coeffs.g[k](t, grid_half.x1_of(idx), grid_half.x2_of(idx));
            g_ext[k] = odd_extend(g_half, grid_half, ext);
        }
    };
    extend_g(0.0);

    SolutionField out;
    out.scheme = Pipeline::decomposition;
    const int M = tg.num_steps;

    std::vector<double> u_ext(ext.total(), 0.0);
    std::vector<double> u_half(grid_half.total(), 0.0);
    std::vector<double> rhs(ext.total(), 0.0);

    BandedSystem sys(ext.total(), ext.dim == 2 ? ext.npts[1] + 1 : 1,
                     ext.dim == 2 ? ext.npts[1] + 1 : 1);
    detail::assemble_implicit_matrix(sys, ext, tg.dt,
                                     [&](int, double& a11, double& a12, double& a22) {
                                         a11 = a22 = K_upper;
                                         a12 = 0.0;
                                     });

    auto store = [&](int m) {
        bool want = m == 0 || m == M;
        if (opts.store_stride > 0 && m % opts.store_stride == 0) want = true;
        if (!want) return;
        out.steps.push_back(m);
        out.values.push_back(u_half);
    };
    store(0);
    if (opts.observer) opts.observer(0, 0.0, u_half);

    const int s = ext.npts[1];
    const double inv2h1 = 0.5 / ext.h[0];
    const double inv2h2 = ext.dim == 2 ? 0.5 / ext.h[1] : 0.0;

    for (int m = 0; m < M; ++m) {
        double t_m = tg.time(m);
        if (coeffs.flags.time_dep_g && m > 0) extend_g(t_m);
        // contract sigma against the increments once per step
        double s1dW = 0.0, s2dW = 0.0;
        for (int k = 0; k < K; ++k) {
            double w = bundle.dW(k, m);
            s1dW += series[(static_cast<size_t>(m) * coeffs.dim + 0) * K + k] * w;
            if (coeffs.dim == 2)
                s2dW += series[(static_cast<size_t>(m) * coeffs.dim + 1) * K + k] * w;
        }
        (void)s1dW;  // identically zero by the checked contract

        std::fill(rhs.begin(), rhs.end(), 0.0);
        const double* up = u_ext.data();
        for (int idx : ext.interior) {
            double noise = 0.0;
            if (ext.dim == 2 && s2dW != 0.0) noise += s2dW * stencil::d2(up, idx, inv2h2);
            for (int k = 0; k < K; ++k) noise += g_ext[k][idx] * bundle.dW(k, m);
            rhs[idx] = up[idx] + noise;
        }
        (void)inv2h1;
        sys.solve(rhs);
        u_ext.swap(rhs);
        if (!detail::all_finite(u_ext)) {
            out.poisoned = true;
            out.poisoned_step = m + 1;
            break;
        }
        u_half = restrict_to_half(u_ext, grid_half, ext);
        store(m + 1);
        if (opts.observer) opts.observer(m + 1, tg.time(m + 1), u_half);
    }
    return out;
}

SolutionField solve_random_pde(const ScalarFn& f_tilde, const CoefficientSet& coeffs,
                               const TranslationPath& xi, const Grid& grid_half,
                               const TimeGrid& tg, const std::vector<double>& v0,
                               bool allow_degenerate, const SolveOptions& opts) {
    if (!xi.first_component_zero)
        throw contract_error("solve_random_pde: xi has nonzero first component");
    if (xi.num_steps != tg.num_steps)
        throw contract_error("solve_random_pde: xi does not match time grid");

    EffectiveDiffusion aeff;
    aeff.sample(coeffs, grid_half, 0.0);
    check_effective_diffusion(aeff, grid_half, coeffs.dim, allow_degenerate);
    const bool static_a = !coeffs.flags.time_dep_a && !coeffs.flags.time_dep_sigma;

    SolutionField out;
    out.scheme = Pipeline::decomposition;
    const int M = tg.num_steps;

    std::vector<double> v = v0;
    for (int idx : grid_half.boundary) v[idx] = 0.0;
    std::vector<double> rhs(grid_half.total(), 0.0);
    std::vector<double> fgrid(grid_half.total(), 0.0);
    std::vector<double> fshift;

    BandedSystem sys(grid_half.total(), grid_half.dim == 2 ? grid_half.npts[1] + 1 : 1,
                     grid_half.dim == 2 ? grid_half.npts[1] + 1 : 1);
    auto assemble = [&]() {
        detail::assemble_implicit_matrix(sys, grid_half, tg.dt,
                                         [&](int idx, double& a11, double& a12, double& a22) {
                                             a11 = aeff.vals[idx * 3 + 0];
                                             a12 = aeff.vals[idx * 3 + 1];
                                             a22 = aeff.vals[idx * 3 + 2];
                                         });
    };
    assemble();

    auto store = [&](int m) {
        bool want = m == 0 || m == M;
        if (opts.store_stride > 0 && m % opts.store_stride == 0) want = true;
        if (!want) return;
        out.steps.push_back(m);
        out.values.push_back(v);
    };
    store(0);
    if (opts.observer) opts.observer(0, 0.0, v);

    for (int m = 0; m < M; ++m) {
        double t_m = tg.time(m);
        if (!static_a && m > 0) {
            aeff.sample(coeffs, grid_half, t_m);
            check_effective_diffusion(aeff, grid_half, coeffs.dim, allow_degenerate);
            assemble();
        }
        for (int idx = 0; idx < grid_half.total(); ++idx)
            fgrid[idx] = grid_half.cls[idx] == PointClass::interior
                             ? f_tilde(t_m, grid_half.x1_of(idx), grid_half.x2_of(idx))
                             : 0.0;
        translate_into(fshift, fgrid, grid_half, -shift_of(xi, m, grid_half.dim));
        std::fill(rhs.begin(), rhs.end(), 0.0);
        for (int idx : grid_half.interior) rhs[idx] = v[idx] + tg.dt * fshift[idx];
        sys.solve(rhs);
        v.swap(rhs);
        if (!detail::all_finite(v)) {
            out.poisoned = true;
            out.poisoned_step = m + 1;
            break;
        }
        store(m + 1);
        if (opts.observer) opts.observer(m + 1, tg.time(m + 1), v);
    }
    return out;
}

DecompositionResult solve_decomposition(const CoefficientSet& coeffs, double K_upper,
                                        const Grid& grid_half, const TimeGrid& tg,
                                        const WienerBundle& bundle, const std::vector<double>& u0,
                                        bool allow_degenerate, const SolveOptions& opts) {
    if (grid_half.spec.kind != DomainKind::half_line &&
        grid_half.spec.kind != DomainKind::half_plane)
        throw contract_error("solve_decomposition: needs a half_line or half_plane grid");
    if (bundle.modes != coeffs.modes || bundle.num_steps != tg.num_steps)
        throw contract_error("solve_decomposition: bundle does not match scenario");
    require_model_form(coeffs, grid_half, tg, /*forcing_allowed=*/true);

    auto series = sample_sigma_series(coeffs, grid_half, tg);
    require_first_row_zero(series, coeffs.dim, coeffs.modes, tg.num_steps);

    DecompositionResult res;
    res.xi = translation_path(series, coeffs.dim, bundle);

    EffectiveDiffusion aeff;
    aeff.sample(coeffs, grid_half, 0.0);
    check_effective_diffusion(aeff, grid_half, coeffs.dim, allow_degenerate);
    const bool static_lower = !coeffs.flags.time_dep_a && !coeffs.flags.time_dep_sigma;

    Grid ext = build_extended_grid(grid_half);
    const int K = coeffs.modes;
    const int M = tg.num_steps;
    const int dim = coeffs.dim;

    // per-mode odd-extended g and the plain forcing f, refreshed when time dependent
    std::vector<std::vector<double>> g_ext(K);
    std::vector<double> g_half(grid_half.total(), 0.0);
    auto extend_g = [&](double t) {
        for (int k = 0; k < K; ++k) {
            for (int idx = 0; idx < grid_half.total(); ++idx)
                g_half[idx] = coeffs.g[k](t, grid_half.x1_of(idx), grid_half.x2_of(idx));
            g_ext[k] = odd_extend(g_half, grid_half, ext);
        }
    };
    extend_g(0.0);
    std::vector<double> F(grid_half.total(), 0.0);
    std::vector<double> Ahalf(static_cast<size_t>(grid_half.total()) * 3, 0.0);
    auto eval_fa = [&](double t) {
        for (int idx = 0; idx < grid_half.total(); ++idx) {
            double x1 = grid_half.x1_of(idx), x2 = grid_half.x2_of(idx);
            F[idx] = coeffs.f(t, x1, x2);
            Ahalf[idx * 3 + 0] = coeffs.a11(t, x1, x2);
            if (dim == 2) {
                Ahalf[idx * 3 + 1] = coeffs.a12(t, x1, x2);
                Ahalf[idx * 3 + 2] = coeffs.a22(t, x1, x2);
            }
        }
    };
    eval_fa(0.0);

    BandedSystem sysU(ext.total(), ext.dim == 2 ? ext.npts[1] + 1 : 1,
                      ext.dim == 2 ? ext.npts[1] + 1 : 1);
    detail::assemble_implicit_matrix(sysU, ext, tg.dt,
                                     [&](int, double& a11, double& a12, double& a22) {
                                         a11 = a22 = K_upper;
                                         a12 = 0.0;
                                     });
    BandedSystem sysV(grid_half.total(), grid_half.dim == 2 ? grid_half.npts[1] + 1 : 1,
                      grid_half.dim == 2 ? grid_half.npts[1] + 1 : 1);
    auto assembleV = [&]() {
        detail::assemble_implicit_matrix(sysV, grid_half, tg.dt,
                                         [&](int idx, double& a11, double& a12, double& a22) {
                                             a11 = aeff.vals[idx * 3 + 0];
                                             a12 = aeff.vals[idx * 3 + 1];
                                             a22 = aeff.vals[idx * 3 + 2];
                                         });
    };
    assembleV();

    std::vector<double> u_ext(ext.total(), 0.0);
    std::vector<double> uhat_half(grid_half.total(), 0.0);
    std::vector<double> v = u0;
    for (int idx : grid_half.boundary) v[idx] = 0.0;
    for (int idx = 0; idx < grid_half.total(); ++idx)
        if (grid_half.cls[idx] == PointClass::exterior) v[idx] = 0.0;

    std::vector<double> ftilde(grid_half.total(), 0.0);
    std::vector<double> fshift, vshift;
    std::vector<double> rhsU(ext.total(), 0.0), rhsV(grid_half.total(), 0.0);
    std::vector<double> u_out(grid_half.total(), 0.0);

    SolutionField& out = res.u;
    out.scheme = Pipeline::decomposition;

    auto assemble_output = [&](int m) {
        translate_into(vshift, v, grid_half, shift_of(res.xi, m, dim));
        for (int idx = 0; idx < grid_half.total(); ++idx) u_out[idx] = uhat_half[idx] + vshift[idx];
        for (int idx : grid_half.boundary) u_out[idx] = 0.0;
    };
    auto store = [&](int m) {
        bool want = m == 0 || m == M;
        if (opts.store_stride > 0 && m % opts.store_stride == 0) want = true;
        if (!want) return;
        out.steps.push_back(m);
        out.values.push_back(u_out);
    };

    assemble_output(0);
    store(0);
    if (opts.observer) opts.observer(0, 0.0, u_out);

    const int s_half = grid_half.npts[1];
    const int s_ext = ext.npts[1];
    const double invh1sq = 1.0 / (grid_half.h[0] * grid_half.h[0]);
    const double invh2sq = dim == 2 ? 1.0 / (grid_half.h[1] * grid_half.h[1]) : 0.0;
    const double inv4h1h2 = dim == 2 ? 1.0 / (4.0 * grid_half.h[0] * grid_half.h[1]) : 0.0;
    const double inv2h2e = ext.dim == 2 ? 0.5 / ext.h[1] : 0.0;

    double corr_max = 0.0, f_max = 0.0;
    for (double x : F) f_max = std::max(f_max, std::abs(x));

    for (int m = 0; m < M; ++m) {
        double t_m = tg.time(m);
        if (m > 0) {
            if (coeffs.flags.time_dep_g) extend_g(t_m);
            if (coeffs.flags.time_dep_a || coeffs.flags.time_dep_f) {
                eval_fa(t_m);
                for (double x : F) f_max = std::max(f_max, std::abs(x));
            }
            if (!static_lower) {
                aeff.sample(coeffs, grid_half, t_m);
                check_effective_diffusion(aeff, grid_half, dim, allow_degenerate);
                assembleV();
            }
        }

        // correction f_tilde = f - (K delta^{ij} - a^{ij}) uhat_{ij} on the half grid
        const double* uh = uhat_half.data();
        for (int idx = 0; idx < grid_half.total(); ++idx) ftilde[idx] = 0.0;
        for (int idx : grid_half.interior) {
            double corr = (K_upper - Ahalf[idx * 3 + 0]) * stencil::d11(uh, idx, s_half, invh1sq);
            if (dim == 2) {
                corr += (K_upper - Ahalf[idx * 3 + 2]) * stencil::d22(uh, idx, invh2sq);
                corr += -2.0 * Ahalf[idx * 3 + 1] * stencil::d12(uh, idx, s_half, inv4h1h2);
            }
            corr_max = std::max(corr_max, std::abs(corr));
            ftilde[idx] = F[idx] - corr;
        }

        // random-PDE step with forcing at translated points
        translate_into(fshift, ftilde, grid_half, -shift_of(res.xi, m, dim));
        std::fill(rhsV.begin(), rhsV.end(), 0.0);
        for (int idx : grid_half.interior) rhsV[idx] = v[idx] + tg.dt * fshift[idx];
        sysV.solve(rhsV);
        v.swap(rhsV);

        // reflected heat step
        double s2dW = 0.0;
        for (int k = 0; k < K; ++k)
            if (dim == 2) s2dW += series[(static_cast<size_t>(m) * dim + 1) * K + k] * bundle.dW(k, m);
        std::fill(rhsU.begin(), rhsU.end(), 0.0);
        const double* up = u_ext.data();
        for (int idx : ext.interior) {
            double noise = 0.0;
            if (dim == 2 && s2dW != 0.0) noise += s2dW * stencil::d2(up, idx, inv2h2e);
            for (int k = 0; k < K; ++k) noise += g_ext[k][idx] * bundle.dW(k, m);
            rhsU[idx] = up[idx] + noise;
        }
        sysU.solve(rhsU);
        u_ext.swap(rhsU);

        if (!detail::all_finite(u_ext) || !detail::all_finite(v)) {
            out.poisoned = true;
            out.poisoned_step = m + 1;
            break;
        }
        uhat_half = restrict_to_half(u_ext, grid_half, ext);
        assemble_output(m + 1);
        store(m + 1);
        if (opts.observer) opts.observer(m + 1, tg.time(m + 1), u_out);
    }

    res.correction_ratio = corr_max / std::max(f_max, 1e-300);
    res.correction_flagged = res.correction_ratio > 100.0;
    return res;
}

}  // namespace spde
