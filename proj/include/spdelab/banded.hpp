#pragma once

#include <vector>

#include "spdelab/errors.hpp"

namespace spde {

// General banded linear system solved via LAPACK dgbtrf/dgbtrs (partial
// pivoting). Assembly writes into LAPACK band storage directly; factor()
// overwrites the buffer, so re-assemble before refactoring.
class BandedSystem {
  public:
    BandedSystem(int n, int kl, int ku);

    void zero();
    // Add to entry (row i, col j); |i - j| must lie within the band.
    void add(int i, int j, double v);
    void set(int i, int j, double v);

    void factor();
    void solve(std::vector<double>& rhs) const;  // in place, length n

    int size() const { return n_; }

  private:
    int n_, kl_, ku_, ldab_;
    std::vector<double> ab_;
    std::vector<int> ipiv_;
    bool factored_ = false;

    size_t pos(int i, int j) const {
        return static_cast<size_t>(j) * ldab_ + (kl_ + ku_ + i - j);
    }
};

}  // namespace spde
