#include "spdelab/fields.hpp"

#include <cmath>

namespace spde {

CoefficientSet CoefficientSet::zeros(int dim, int modes) {
    CoefficientSet cs;
    cs.dim = dim;
    cs.modes = modes;
    cs.a11 = cs.a12 = cs.a22 = zero_fn();
    cs.b1 = cs.b2 = cs.c = zero_fn();
    cs.sigma.assign(static_cast<size_t>(dim) * modes, zero_fn());
    cs.nu.assign(modes, zero_fn());
    cs.f = zero_fn();
    cs.g.assign(modes, zero_fn());
    return cs;
}

namespace {

struct Eigs {
    double lo, hi;
};

// Closed-form eigenvalue range of a symmetric 2x2 [[p, q], [q, r]].
Eigs sym2_eigs(double p, double q, double r) {
    double mean = 0.5 * (p + r);
    double d = std::sqrt(0.25 * (p - r) * (p - r) + q * q);
    return {mean - d, mean + d};
}

}  // namespace

MarginReport verify_parabolicity(const CoefficientSet& coeffs, const Grid& grid,
                                 const std::vector<double>& time_samples,
                                 const ParabolicityBounds& bounds) {
    if (time_samples.empty()) throw contract_error("verify_parabolicity: no time samples");
    MarginReport rep;
    rep.min_margin = std::numeric_limits<double>::infinity();
    rep.max_upper = -std::numeric_limits<double>::infinity();

    const int K = coeffs.modes;
    for (double t : time_samples) {
        for (int idx = 0; idx < grid.total(); ++idx) {
            if (grid.cls[idx] == PointClass::exterior) continue;
            double x1 = grid.x1_of(idx), x2 = grid.x2_of(idx);
            double margin, upper;
            if (coeffs.dim == 1) {
                double a = coeffs.a11(t, x1, x2);
                double ss = 0.0;
                for (int k = 0; k < K; ++k) {
                    double s = coeffs.sigma[k](t, x1, x2);
                    ss += s * s;
                }
                margin = 2.0 * a - ss;
                upper = 2.0 * a;
            } else {
                double a11 = coeffs.a11(t, x1, x2);
                double a12 = coeffs.a12(t, x1, x2);
                double a22 = coeffs.a22(t, x1, x2);
                double s11 = 0.0, s12 = 0.0, s22 = 0.0;
                for (int k = 0; k < K; ++k) {
                    double s1 = coeffs.sigma[static_cast<size_t>(0) * K + k](t, x1, x2);
                    double s2 = coeffs.sigma[static_cast<size_t>(1) * K + k](t, x1, x2);
                    s11 += s1 * s1;
                    s12 += s1 * s2;
                    s22 += s2 * s2;
                }
                margin = sym2_eigs(2.0 * a11 - s11, 2.0 * a12 - s12, 2.0 * a22 - s22).lo;
                upper = sym2_eigs(2.0 * a11, 2.0 * a12, 2.0 * a22).hi;
            }
            if (!std::isfinite(margin) || !std::isfinite(upper))
                throw numerical_error("verify_parabolicity: non-finite coefficient at x1=" +
                                      std::to_string(x1));
            if (margin < rep.min_margin) {
                rep.min_margin = margin;
                rep.worst_t = t;
                rep.worst_x1 = x1;
                rep.worst_x2 = x2;
            }
            rep.max_upper = std::max(rep.max_upper, upper);
        }
    }
    rep.pass = rep.min_margin >= bounds.kappa && rep.max_upper <= bounds.K_upper;
    return rep;
}

CoeffSample evaluate_coefficients(const CoefficientSet& coeffs, double t, const Grid& grid,
                                  const std::vector<double>* u_current) {
    if (coeffs.semilinear() && u_current == nullptr)
        throw contract_error("evaluate_coefficients: semilinear set needs u_current");
    if (!coeffs.semilinear() && u_current != nullptr)
        throw contract_error("evaluate_coefficients: u_current given for non-semilinear set");

    const int n = grid.total();
    const int K = coeffs.modes;
    const int dim = coeffs.dim;
    CoeffSample s;
    s.A.assign(static_cast<size_t>(n) * 3, 0.0);
    s.B.assign(static_cast<size_t>(n) * 2, 0.0);
    s.C.assign(n, 0.0);
    s.Sigma.assign(static_cast<size_t>(n) * dim * K, 0.0);
    s.Nu.assign(static_cast<size_t>(n) * K, 0.0);
    s.F.assign(n, 0.0);
    s.G.assign(static_cast<size_t>(n) * K, 0.0);

    auto guard = [&](double v, const char* slot, int idx) {
        if (!std::isfinite(v))
            throw numerical_error(std::string("evaluate_coefficients: non-finite ") + slot +
                                  " at x1=" + std::to_string(grid.x1_of(idx)) +
                                  " x2=" + std::to_string(grid.x2_of(idx)) +
                                  " t=" + std::to_string(t));
        return v;
    };

    for (int idx = 0; idx < n; ++idx) {
        if (grid.cls[idx] == PointClass::exterior) continue;
        double x1 = grid.x1_of(idx), x2 = grid.x2_of(idx);
        s.A[idx * 3 + 0] = guard(coeffs.a11(t, x1, x2), "a11", idx);
        if (dim == 2) {
            s.A[idx * 3 + 1] = guard(coeffs.a12(t, x1, x2), "a12", idx);
            s.A[idx * 3 + 2] = guard(coeffs.a22(t, x1, x2), "a22", idx);
            s.B[idx * 2 + 1] = guard(coeffs.b2(t, x1, x2), "b2", idx);
        }
        s.B[idx * 2 + 0] = guard(coeffs.b1(t, x1, x2), "b1", idx);
        s.C[idx] = guard(coeffs.c(t, x1, x2), "c", idx);
        for (int i = 0; i < dim; ++i)
            for (int k = 0; k < K; ++k)
                s.Sigma[(static_cast<size_t>(idx) * dim + i) * K + k] =
                    guard(coeffs.sigma[static_cast<size_t>(i) * K + k](t, x1, x2), "sigma", idx);
        for (int k = 0; k < K; ++k)
            s.Nu[static_cast<size_t>(idx) * K + k] = guard(coeffs.nu[k](t, x1, x2), "nu", idx);

        if (coeffs.flags.semilinear_f)
            s.F[idx] = guard(coeffs.f_reaction(t, x1, x2, (*u_current)[idx]), "f(u)", idx);
        else
            s.F[idx] = guard(coeffs.f(t, x1, x2), "f", idx);
        for (int k = 0; k < K; ++k) {
            double gv;
            if (coeffs.flags.semilinear_g)
                gv = coeffs.g_reaction[k](t, x1, x2, (*u_current)[idx]);
            else
                gv = coeffs.g[k](t, x1, x2);
            s.G[static_cast<size_t>(idx) * K + k] = guard(gv, "g", idx);
        }
    }
    return s;
}

}  // namespace spde
