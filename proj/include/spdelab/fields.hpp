#pragma once

#include <functional>
#include <string>
#include <vector>

#include "spdelab/domain.hpp"

namespace spde {

using ScalarFn = std::function<double(double t, double x1, double x2)>;
using ReactionFn = std::function<double(double t, double x1, double x2, double u)>;

inline ScalarFn zero_fn() {
    return [](double, double, double) { return 0.0; };
}

// Evaluable coefficient data of the linear/semilinear equation
//   du = (a^{ij} u_{ij} + b^i u_i + c u + f) dt + (sigma^{ik} u_i + nu^k u + g^k) dW^k.
// Evaluators are deterministic functions of (t, x) (and u for reactions);
// the flags let the solver skip re-evaluation of static slots.
struct CoefficientSet {
    int dim = 1;
    int modes = 0;  // K

    ScalarFn a11, a12, a22;          // a12/a22 unused for dim == 1
    ScalarFn b1, b2, c;
    std::vector<ScalarFn> sigma;     // [i*modes + k]
    std::vector<ScalarFn> nu;        // [k]
    ScalarFn f;                      // fixed forcing (ignored when semilinear_f)
    std::vector<ScalarFn> g;         // [k]
    ReactionFn f_reaction;           // used when semilinear_f
    std::vector<ReactionFn> g_reaction;  // [k], used when semilinear_g

    struct Flags {
        bool sigma_x_independent = false;
        bool semilinear_f = false;
        bool semilinear_g = false;
        bool time_dep_a = false;
        bool time_dep_b = false;
        bool time_dep_c = false;
        bool time_dep_sigma = false;
        bool time_dep_nu = false;
        bool time_dep_f = false;
        bool time_dep_g = false;
    } flags;

    bool semilinear() const { return flags.semilinear_f || flags.semilinear_g; }

    // Fully zero set with the given shape.
    static CoefficientSet zeros(int dim, int modes);
};

struct ParabolicityBounds {
    double kappa = 0.0;    // required ellipticity margin, > 0
    double K_upper = 0.0;  // upper bound on eigenvalues of 2a

    ParabolicityBounds() = default;
    ParabolicityBounds(double kappa_, double K_upper_) : kappa(kappa_), K_upper(K_upper_) {
        if (!(kappa > 0.0) || !(kappa <= K_upper))
            throw config_error("ParabolicityBounds: need 0 < kappa <= K_upper");
    }
};

struct MarginReport {
    double min_margin = 0.0;  // min over samples of lambda_min(2a - sigma sigma^T)
    double max_upper = 0.0;   // max over samples of lambda_max(2a)
    bool pass = false;
    double worst_t = 0.0;
    double worst_x1 = 0.0, worst_x2 = 0.0;
};

// Checks kappa |xi|^2 + (sigma sigma^T xi, xi) <= (2a xi, xi) <= K |xi|^2 on
// grid points x time samples. Eigenvalues in closed form (dim <= 2).
MarginReport verify_parabolicity(const CoefficientSet& coeffs, const Grid& grid,
                                 const std::vector<double>& time_samples,
                                 const ParabolicityBounds& bounds);

// Dense samples of every coefficient on interior + boundary points at time t.
// Layouts: A[pt*3 + {0:a11,1:a12,2:a22}], B[pt*2], Sigma[(pt*dim + i)*K + k],
// Nu/G[pt*K + k].
struct CoeffSample {
    std::vector<double> A, B, C, Sigma, Nu, F, G;
};

// u_current must be supplied iff the set is semilinear; any NaN/Inf in an
// evaluated slot raises a numerical error naming the location.
CoeffSample evaluate_coefficients(const CoefficientSet& coeffs, double t, const Grid& grid,
                                  const std::vector<double>* u_current = nullptr);

}  // namespace spde
