#include "spdelab/domain.hpp"

#include <algorithm>
#include <cmath>

namespace spde {

const char* domain_kind_name(DomainKind k) {
    switch (k) {
        case DomainKind::interval: return "interval";
        case DomainKind::rectangle: return "rectangle";
        case DomainKind::half_line: return "half_line";
        case DomainKind::half_plane: return "half_plane";
        case DomainKind::disk: return "disk";
    }
    return "?";
}

DomainSpec DomainSpec::interval(double a, double b) {
    if (!(b > a)) throw config_error("interval: need b > a");
    DomainSpec s;
    s.kind = DomainKind::interval;
    s.dim = 1;
    s.lo = {a, 0.0};
    s.hi = {b, 0.0};
    return s;
}

DomainSpec DomainSpec::rectangle(double a1, double b1, double a2, double b2) {
    if (!(b1 > a1) || !(b2 > a2)) throw config_error("rectangle: degenerate extents");
    DomainSpec s;
    s.kind = DomainKind::rectangle;
    s.dim = 2;
    s.lo = {a1, a2};
    s.hi = {b1, b2};
    return s;
}

DomainSpec DomainSpec::half_line(double x_max) {
    if (!(x_max > 0.0)) throw config_error("half_line: x_max must be positive");
    DomainSpec s;
    s.kind = DomainKind::half_line;
    s.dim = 1;
    s.lo = {0.0, 0.0};
    s.hi = {x_max, 0.0};
    return s;
}

DomainSpec DomainSpec::half_plane(double x_max, double y_min, double y_max) {
    if (!(x_max > 0.0) || !(y_max > y_min)) throw config_error("half_plane: degenerate extents");
    DomainSpec s;
    s.kind = DomainKind::half_plane;
    s.dim = 2;
    s.lo = {0.0, y_min};
    s.hi = {x_max, y_max};
    return s;
}

DomainSpec DomainSpec::disk(double radius) {
    if (!(radius > 0.0)) throw config_error("disk: radius must be positive");
    DomainSpec s;
    s.kind = DomainKind::disk;
    s.dim = 2;
    s.lo = {-radius, -radius};
    s.hi = {radius, radius};
    s.radius = radius;
    return s;
}

namespace {

Grid build_lattice(const DomainSpec& spec, int res0, int res1) {
    Grid g;
    g.spec = spec;
    g.dim = spec.dim;
    g.npts = {res0 + 1, spec.dim == 2 ? res1 + 1 : 1};
    g.h = {(spec.hi[0] - spec.lo[0]) / res0,
           spec.dim == 2 ? (spec.hi[1] - spec.lo[1]) / res1 : 0.0};
    g.cls.assign(g.total(), PointClass::interior);
    g.bslot.assign(g.total(), -1);
    return g;
}

void push_boundary(Grid& g, int flat, double n1, double n2, bool physical) {
    g.cls[flat] = PointClass::boundary;
    g.bslot[flat] = static_cast<int32_t>(g.boundary.size());
    g.boundary.push_back(flat);
    g.normals.push_back({n1, n2, physical});
}

void classify_box(Grid& g, bool face_physical[4]) {
    // face order: x1-low, x1-high, x2-low, x2-high
    const int Nx = g.npts[0] - 1, Ny = g.npts[1] - 1;
    const double inv_sqrt2 = 0.70710678118654752440;
    for (int i = 0; i <= Nx; ++i) {
        for (int j = 0; j <= Ny; ++j) {
            if (g.dim == 1 && j > 0) continue;
            double n1 = 0.0, n2 = 0.0;
            bool phys = false;
            if (i == 0) { n1 -= 1.0; phys = phys || face_physical[0]; }
            if (i == Nx) { n1 += 1.0; phys = phys || face_physical[1]; }
            if (g.dim == 2 && j == 0) { n2 -= 1.0; phys = phys || face_physical[2]; }
            if (g.dim == 2 && j == Ny) { n2 += 1.0; phys = phys || face_physical[3]; }
            if (n1 == 0.0 && n2 == 0.0) continue;
            if (n1 != 0.0 && n2 != 0.0) { n1 *= inv_sqrt2; n2 *= inv_sqrt2; }
            // half_plane: the whole x1 = 0 face belongs to the physical
            // boundary, corners included.
            if (g.spec.kind == DomainKind::half_plane && i == 0) { n1 = -1.0; n2 = 0.0; phys = true; }
            push_boundary(g, g.flat(i, j), n1, n2, phys);
        }
    }
}

void classify_disk(Grid& g) {
    const int Nx = g.npts[0] - 1, Ny = g.npts[1] - 1;
    const double R2 = g.spec.radius * g.spec.radius;
    auto inside = [&](int i, int j) {
        if (i < 0 || j < 0 || i > Nx || j > Ny) return false;
        double x = g.x1(i), y = g.x2(j);
        return x * x + y * y < R2;
    };
    for (int i = 0; i <= Nx; ++i)
        for (int j = 0; j <= Ny; ++j)
            if (!inside(i, j)) g.cls[g.flat(i, j)] = PointClass::exterior;
    for (int i = 0; i <= Nx; ++i) {
        for (int j = 0; j <= Ny; ++j) {
            int f = g.flat(i, j);
            if (g.cls[f] == PointClass::exterior) continue;
            bool cut = !inside(i - 1, j) || !inside(i + 1, j) || !inside(i, j - 1) || !inside(i, j + 1);
            if (!cut) continue;
            double x = g.x1(i), y = g.x2(j);
            double r = std::sqrt(x * x + y * y);
            if (r == 0.0) throw config_error("disk grid: resolution too small");
            push_boundary(g, f, x / r, y / r, true);
        }
    }
}

}  // namespace

Grid build_grid(const DomainSpec& spec, int resolution) {
    if (resolution < 4) throw config_error("build_grid: resolution must be >= 4");
    Grid g = build_lattice(spec, resolution, resolution);
    switch (spec.kind) {
        case DomainKind::interval:
        case DomainKind::rectangle: {
            bool phys[4] = {true, true, true, true};
            classify_box(g, phys);
            break;
        }
        case DomainKind::half_line:
        case DomainKind::half_plane: {
            bool phys[4] = {true, false, false, false};
            classify_box(g, phys);
            break;
        }
        case DomainKind::disk:
            classify_disk(g);
            break;
    }
    for (int f = 0; f < g.total(); ++f)
        if (g.cls[f] == PointClass::interior) g.interior.push_back(f);
    return g;
}

std::array<double, 2> outward_normal(const Grid& grid, int flat_index) {
    if (flat_index < 0 || flat_index >= grid.total() || grid.bslot[flat_index] < 0)
        throw contract_error("outward_normal: index is not a boundary point");
    const BoundaryNormal& n = grid.normals[grid.bslot[flat_index]];
    return {n.n1, n.n2};
}

Grid build_extended_grid(const Grid& half) {
    const DomainSpec& s = half.spec;
    if (s.kind != DomainKind::half_line && s.kind != DomainKind::half_plane)
        throw contract_error("build_extended_grid: grid is not a half domain");
    const int N = half.npts[0] - 1;
    DomainSpec ext = s.dim == 1 ? DomainSpec::interval(-s.hi[0], s.hi[0])
                                : DomainSpec::rectangle(-s.hi[0], s.hi[0], s.lo[1], s.hi[1]);
    Grid g = build_lattice(ext, 2 * N, half.npts[1] - 1);
    bool phys[4] = {false, false, false, false};
    classify_box(g, phys);
    for (int f = 0; f < g.total(); ++f)
        if (g.cls[f] == PointClass::interior) g.interior.push_back(f);
    return g;
}

std::vector<double> odd_extend(const std::vector<double>& field, const Grid& half, const Grid& ext,
                               double tol) {
    const int N = half.npts[0] - 1;
    const int ny = half.npts[1];
    if (field.size() != static_cast<size_t>(half.total()))
        throw contract_error("odd_extend: field size does not match half grid");
    if (tol < 0.0) {
        double mx = 0.0;
        for (double v : field) mx = std::max(mx, std::abs(v));
        tol = 1e-8 * mx;
    }
    for (int j = 0; j < ny; ++j) {
        double trace = field[half.flat(0, j)];
        if (std::abs(trace) > tol)
            throw precondition_error("odd_extend: nonzero trace " + std::to_string(trace) +
                                     " at x1=0 (tol " + std::to_string(tol) + ")");
    }
    std::vector<double> out(static_cast<size_t>(ext.total()), 0.0);
    for (int i = 0; i <= N; ++i) {
        for (int j = 0; j < ny; ++j) {
            double v = field[half.flat(i, j)];
            if (i == 0) v = 0.0;  // exact zero trace on the extension
            out[ext.flat(N + i, j)] = v;
            out[ext.flat(N - i, j)] = -v;
        }
    }
    return out;
}

std::vector<double> restrict_to_half(const std::vector<double>& ext_field, const Grid& half,
                                     const Grid& ext) {
    const int N = half.npts[0] - 1;
    const int ny = half.npts[1];
    if (ext_field.size() != static_cast<size_t>(ext.total()))
        throw contract_error("restrict_to_half: field size does not match extended grid");
    std::vector<double> out(static_cast<size_t>(half.total()), 0.0);
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j < ny; ++j) out[half.flat(i, j)] = ext_field[ext.flat(N + i, j)];
    for (int j = 0; j < ny; ++j) out[half.flat(0, j)] = 0.0;
    return out;
}

}  // namespace spde
