#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "spdelab/errors.hpp"

namespace spde {

enum class DomainKind { interval, rectangle, half_line, half_plane, disk };

const char* domain_kind_name(DomainKind k);

// Spatial domain in dimension 1 or 2. half_line / half_plane are truncations
// of {x1 > 0}: the plane {x1 = 0} is the physical boundary, the remaining
// walls carry homogeneous Dirichlet data and exist only because the lattice
// must end somewhere.
struct DomainSpec {
    DomainKind kind = DomainKind::interval;
    int dim = 1;
    std::array<double, 2> lo{0.0, 0.0};  // lattice bounding box
    std::array<double, 2> hi{1.0, 0.0};
    double radius = 0.0;  // disk only

    static DomainSpec interval(double a, double b);
    static DomainSpec rectangle(double a1, double b1, double a2, double b2);
    static DomainSpec half_line(double x_max);
    static DomainSpec half_plane(double x_max, double y_min, double y_max);
    static DomainSpec disk(double radius);
};

enum class PointClass : uint8_t { exterior, interior, boundary };

struct BoundaryNormal {
    double n1 = 0.0, n2 = 0.0;
    bool physical = true;  // false for truncation walls of half_* domains
};

// Uniform lattice over the bounding box. Flat index = i * npts[1] + j where i
// runs along axis 1. For dim == 1, npts[1] == 1. Every lattice point is
// classified; disk grids keep exterior points in place (value 0, never read).
struct Grid {
    DomainSpec spec;
    int dim = 1;
    std::array<int, 2> npts{0, 1};
    std::array<double, 2> h{0.0, 0.0};

    std::vector<PointClass> cls;
    std::vector<int> interior;            // flat indices, ascending
    std::vector<int> boundary;            // flat indices, ascending
    std::vector<BoundaryNormal> normals;  // parallel to boundary
    std::vector<int32_t> bslot;           // flat -> position in boundary[], or -1

    int nx() const { return npts[0]; }
    int ny() const { return npts[1]; }
    int total() const { return npts[0] * npts[1]; }
    int flat(int i, int j) const { return i * npts[1] + j; }
    int iof(int flat_idx) const { return flat_idx / npts[1]; }
    int jof(int flat_idx) const { return flat_idx % npts[1]; }
    double x1(int i) const { return spec.lo[0] + i * h[0]; }
    double x2(int j) const { return dim == 2 ? spec.lo[1] + j * h[1] : 0.0; }
    double x1_of(int flat_idx) const { return x1(iof(flat_idx)); }
    double x2_of(int flat_idx) const { return x2(jof(flat_idx)); }
    bool is_interior(int flat_idx) const { return cls[flat_idx] == PointClass::interior; }
};

// resolution = cell count per axis (>= 4). Disk grids span [-R, R]^2.
Grid build_grid(const DomainSpec& spec, int resolution);

// Outward unit normal at a boundary lattice point; contract violation on any
// other index.
std::array<double, 2> outward_normal(const Grid& grid, int flat_index);

// Symmetric continuation of a half_line/half_plane grid across {x1 = 0}.
Grid build_extended_grid(const Grid& half);

// Odd continuation g(-x1, x') := -g(x1, x') onto the extended grid. The trace
// on {x1 = 0} must vanish within tol (default 1e-8 * max|field|); the
// extension is pinned to exactly 0 there.
std::vector<double> odd_extend(const std::vector<double>& field, const Grid& half, const Grid& ext,
                               double tol = -1.0);

std::vector<double> restrict_to_half(const std::vector<double>& ext_field, const Grid& half,
                                     const Grid& ext);

}  // namespace spde
