#include "spdelab/banded.hpp"

#include <algorithm>
#include <string>

#include <lapacke.h>

namespace spde {

BandedSystem::BandedSystem(int n, int kl, int ku) : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1) {
    ab_.assign(static_cast<size_t>(ldab_) * n_, 0.0);
    ipiv_.assign(n_, 0);
}

void BandedSystem::zero() {
    std::fill(ab_.begin(), ab_.end(), 0.0);
    factored_ = false;
}

void BandedSystem::add(int i, int j, double v) { ab_[pos(i, j)] += v; }

void BandedSystem::set(int i, int j, double v) { ab_[pos(i, j)] = v; }

void BandedSystem::factor() {
    lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n_, n_, kl_, ku_, ab_.data(), ldab_,
                                     ipiv_.data());
    if (info != 0)
        throw numerical_error("banded factorization failed (dgbtrf info=" + std::to_string(info) +
                              ")");
    factored_ = true;
}

void BandedSystem::solve(std::vector<double>& rhs) const {
    if (!factored_) throw contract_error("BandedSystem::solve before factor");
    if (rhs.size() != static_cast<size_t>(n_))
        throw contract_error("BandedSystem::solve: rhs size mismatch");
    lapack_int info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n_, kl_, ku_, 1, ab_.data(), ldab_,
                                     const_cast<int*>(ipiv_.data()), rhs.data(), n_);
    if (info != 0)
        throw numerical_error("banded solve failed (dgbtrs info=" + std::to_string(info) + ")");
}

}  // namespace spde
