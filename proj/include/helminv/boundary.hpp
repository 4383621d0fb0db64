#pragma once

#include "grid.hpp"
#include "wavevectors.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace helminv {

/// Perimeter of the grid square as one closed counterclockwise loop.
/// Each node carries an outward unit normal and a trapezoid arc-length
/// weight; the four corners get the diagonal normal and weight h.
struct BoundaryGeometry {
    Grid2D grid;
    struct Node {
        int i = 0, j = 0;
        Vec2 position;
        Vec2 normal;
        // inward unit step in grid indices, for the one-sided stencil
        int di = 0, dj = 0;
        double stencil_spacing = 0.0;  // h on edges, h*sqrt(2) at corners
        double weight = 0.0;
    };
    std::vector<Node> nodes;

    static BoundaryGeometry make(const Grid2D& grid) {
        BoundaryGeometry geo;
        geo.grid = grid;
        const int n = grid.n;
        const double h = grid.h;
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        auto push = [&](int i, int j, Vec2 normal, int di, int dj) {
            Node nd;
            nd.i = i;
            nd.j = j;
            nd.position = {grid.x(i), grid.y(j)};
            nd.normal = normal;
            nd.di = di;
            nd.dj = dj;
            const bool corner = (di != 0 && dj != 0);
            nd.stencil_spacing = corner ? h * std::sqrt(2.0) : h;
            nd.weight = h;  // corners h, edge nodes h; trapezoid over 4 edges
            geo.nodes.push_back(nd);
        };
        // bottom edge (j = 0), left to right
        push(0, 0, {-inv_sqrt2, -inv_sqrt2}, 1, 1);
        for (int i = 1; i < n - 1; ++i) push(i, 0, {0.0, -1.0}, 0, 1);
        push(n - 1, 0, {inv_sqrt2, -inv_sqrt2}, -1, 1);
        // right edge (i = n-1), bottom to top
        for (int j = 1; j < n - 1; ++j) push(n - 1, j, {1.0, 0.0}, -1, 0);
        push(n - 1, n - 1, {inv_sqrt2, inv_sqrt2}, -1, -1);
        // top edge (j = n-1), right to left
        for (int i = n - 2; i >= 1; --i) push(i, n - 1, {0.0, 1.0}, 0, -1);
        push(0, n - 1, {-inv_sqrt2, inv_sqrt2}, 1, -1);
        // left edge (i = 0), top to bottom
        for (int j = n - 2; j >= 1; --j) push(0, j, {-1.0, 0.0}, 1, 0);
        return geo;
    }

    std::size_t size() const { return nodes.size(); }
};

/// Complex samples along the boundary, aligned with BoundaryGeometry order.
struct BoundaryTrace {
    std::vector<Complex> values;

    BoundaryTrace() = default;
    explicit BoundaryTrace(std::size_t count, Complex fill = Complex(0.0, 0.0))
        : values(count, fill) {}
};

inline void require_aligned(const BoundaryTrace& t, const BoundaryGeometry& g) {
    if (t.values.size() != g.size())
        throw std::invalid_argument("boundary trace length does not match geometry");
}

/// Trace of e^{i x . zeta} on the boundary nodes.
inline BoundaryTrace plane_wave_trace(const BoundaryGeometry& geo, const WaveVector& zeta) {
    BoundaryTrace t(geo.size());
    const Complex iu(0.0, 1.0);
    for (std::size_t a = 0; a < geo.size(); ++a) {
        const auto& nd = geo.nodes[a];
        t.values[a] = std::exp(iu * zeta.dot_real(nd.position));
    }
    return t;
}

/// Bilinear pairing sum a*b*weight (no conjugation).
inline Complex boundary_integral(const BoundaryTrace& a, const BoundaryTrace& b,
                                 const BoundaryGeometry& geo) {
    require_aligned(a, geo);
    require_aligned(b, geo);
    Complex sum(0.0, 0.0);
    for (std::size_t n = 0; n < geo.size(); ++n)
        sum += a.values[n] * b.values[n] * geo.nodes[n].weight;
    return sum;
}

/// Pointwise difference of full and background Neumann traces.
inline BoundaryTrace linearized_neumann(const BoundaryTrace& full,
                                        const BoundaryTrace& background) {
    if (full.values.size() != background.values.size())
        throw std::invalid_argument("linearized_neumann: trace length mismatch");
    BoundaryTrace out(full.values.size());
    for (std::size_t n = 0; n < out.values.size(); ++n)
        out.values[n] = full.values[n] - background.values[n];
    return out;
}

/// Outward normal derivative by the second-order one-sided stencil
/// (3 u_b - 4 u_{b-1} + u_{b-2}) / (2 s) along the inward grid direction.
inline BoundaryTrace neumann_trace(const ScalarField2D& u, const BoundaryGeometry& geo) {
    if (u.grid != geo.grid)
        throw std::invalid_argument("neumann_trace: field grid does not match geometry");
    if (geo.grid.n < 4)
        throw std::invalid_argument("neumann_trace: grid too small for the stencil (n < 4)");
    BoundaryTrace t(geo.size());
    for (std::size_t a = 0; a < geo.size(); ++a) {
        const auto& nd = geo.nodes[a];
        const Complex u0 = u.at(nd.i, nd.j);
        const Complex u1 = u.at(nd.i + nd.di, nd.j + nd.dj);
        const Complex u2 = u.at(nd.i + 2 * nd.di, nd.j + 2 * nd.dj);
        // derivative along the inward direction, negated for the outward normal
        t.values[a] = -(-3.0 * u0 + 4.0 * u1 - u2) / (2.0 * nd.stencil_spacing);
    }
    return t;
}

}  // namespace helminv
