#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace helminv {

using Complex = std::complex<double>;

/// Uniform sampling of the unit square [-0.5, 0.5]^2 with n points per side.
struct Grid2D {
    int n = 0;       ///< points per side, >= 3
    double h = 0.0;  ///< spacing, 1/(n-1)

    static Grid2D make(int n) {
        if (n < 3)
            throw std::invalid_argument("Grid2D: need at least 3 points per side, got " +
                                        std::to_string(n));
        Grid2D g;
        g.n = n;
        g.h = 1.0 / static_cast<double>(n - 1);
        return g;
    }

    double x(int i) const { return -0.5 + i * h; }
    double y(int j) const { return -0.5 + j * h; }
    int size() const { return n * n; }
    // row-major: node (i, j) = (x(i), y(j))
    int index(int i, int j) const { return i * n + j; }

    bool operator==(const Grid2D& o) const { return n == o.n; }
    bool operator!=(const Grid2D& o) const { return !(*this == o); }
};

/// Complex samples of a function on a Grid2D, row-major.
struct ScalarField2D {
    Grid2D grid;
    std::vector<Complex> values;

    ScalarField2D() = default;
    explicit ScalarField2D(const Grid2D& g, Complex fill = Complex(0.0, 0.0))
        : grid(g), values(static_cast<std::size_t>(g.size()), fill) {}

    Complex& at(int i, int j) { return values[static_cast<std::size_t>(grid.index(i, j))]; }
    const Complex& at(int i, int j) const {
        return values[static_cast<std::size_t>(grid.index(i, j))];
    }
};

inline void require_same_grid(const ScalarField2D& a, const ScalarField2D& b) {
    if (a.grid != b.grid)
        throw std::invalid_argument("fields live on different grids");
}

/// Compact support disk centered at the origin.
struct SupportSpec {
    double radius = 0.35;
};

/// One smooth bump: amplitude * (1 - r^2/width^2)^3 inside its disk, 0 outside.
struct Bump {
    double cx = 0.0;
    double cy = 0.0;
    double amplitude = 1.0;
    double width = 0.15;
};

/// Sum of compactly cut-off C^2 bumps, identically zero outside the support disk.
inline ScalarField2D synth_coefficient(const Grid2D& grid, const std::vector<Bump>& bumps,
                                       const SupportSpec& support = {}) {
    if (!(support.radius > 0.0) || !(support.radius < 0.5))
        throw std::invalid_argument("support radius must lie in (0, 0.5)");
    for (const Bump& b : bumps) {
        const double rc = std::hypot(b.cx, b.cy);
        if (rc + b.width > support.radius)
            throw std::invalid_argument("bump leaves the support disk");
        if (!(b.width > 0.0))
            throw std::invalid_argument("bump width must be positive");
    }
    ScalarField2D field(grid);
    const double r2max = support.radius * support.radius;
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        for (int j = 0; j < grid.n; ++j) {
            const double y = grid.y(j);
            if (x * x + y * y > r2max) continue;
            double v = 0.0;
            for (const Bump& b : bumps) {
                const double dx = x - b.cx;
                const double dy = y - b.cy;
                const double t = (dx * dx + dy * dy) / (b.width * b.width);
                if (t < 1.0) {
                    const double s = 1.0 - t;
                    v += b.amplitude * s * s * s;
                }
            }
            field.at(i, j) = Complex(v, 0.0);
        }
    }
    return field;
}

/// 2-D trapezoidal quadrature over the unit square.
inline Complex volume_quadrature(const ScalarField2D& field) {
    const Grid2D& g = field.grid;
    Complex sum(0.0, 0.0);
    for (int i = 0; i < g.n; ++i) {
        const double wi = (i == 0 || i == g.n - 1) ? 0.5 : 1.0;
        for (int j = 0; j < g.n; ++j) {
            const double wj = (j == 0 || j == g.n - 1) ? 0.5 : 1.0;
            sum += wi * wj * field.at(i, j);
        }
    }
    return sum * (g.h * g.h);
}

inline double field_l2_norm(const ScalarField2D& f) {
    double s = 0.0;
    for (const Complex& v : f.values) s += std::norm(v);
    return std::sqrt(s);
}

inline double field_max_abs(const ScalarField2D& f) {
    double m = 0.0;
    for (const Complex& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace helminv
