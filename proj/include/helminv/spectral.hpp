#pragma once

#include "grid.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace helminv {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class InterpOrder { bilinear, bicubic };

struct OutOfBandError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Frequency lattice 2*pi*(p, q) restricted to |xi| <= R + margin cells.
/// The origin is excluded from the point list and handled separately.
struct FrequencyGrid {
    double band_radius = 0.0;
    int margin = 2;
    int pmax = 0;
    std::vector<std::pair<int, int>> points;  // excludes (0, 0)

    static FrequencyGrid make(double band_radius, int margin = 2) {
        if (!(band_radius > 0.0))
            throw std::invalid_argument("FrequencyGrid: band radius must be positive");
        FrequencyGrid fg;
        fg.band_radius = band_radius;
        fg.margin = margin;
        const double rmax = band_radius + margin * kTwoPi;
        fg.pmax = static_cast<int>(std::ceil(rmax / kTwoPi));
        for (int p = -fg.pmax; p <= fg.pmax; ++p)
            for (int q = -fg.pmax; q <= fg.pmax; ++q) {
                if (p == 0 && q == 0) continue;
                if (kTwoPi * std::hypot(p, q) <= rmax * (1.0 + 1e-12))
                    fg.points.emplace_back(p, q);
            }
        return fg;
    }

    bool in_band(int p, int q) const {
        return kTwoPi * std::hypot(p, q) <= band_radius * (1.0 + 1e-12);
    }
    double xi_x(int p) const { return kTwoPi * p; }
    double xi_y(int q) const { return kTwoPi * q; }
};

/// Complex values on a FrequencyGrid; the origin value, if present, is synthetic
/// unless it was filled from a reference transform.
struct SpectrumTable {
    FrequencyGrid freq;
    int ell = 0;
    std::vector<Complex> values;
    std::vector<char> filled;
    Complex origin_value{0.0, 0.0};
    bool origin_present = false;
    bool origin_synthetic = true;

    SpectrumTable() = default;
    explicit SpectrumTable(FrequencyGrid fg, int ell_tag = 0)
        : freq(std::move(fg)), ell(ell_tag) {
        const int side = 2 * freq.pmax + 1;
        values.assign(static_cast<std::size_t>(side) * side, Complex(0.0, 0.0));
        filled.assign(values.size(), 0);
    }

    int side() const { return 2 * freq.pmax + 1; }
    bool in_range(int p, int q) const {
        return std::abs(p) <= freq.pmax && std::abs(q) <= freq.pmax;
    }
    std::size_t slot(int p, int q) const {
        return static_cast<std::size_t>((p + freq.pmax) * side() + (q + freq.pmax));
    }

    void set(int p, int q, Complex v) {
        if (p == 0 && q == 0) {
            origin_value = v;
            origin_present = true;
            return;
        }
        if (!in_range(p, q)) throw std::out_of_range("SpectrumTable::set: point outside lattice");
        values[slot(p, q)] = v;
        filled[slot(p, q)] = 1;
    }
    bool has(int p, int q) const {
        if (p == 0 && q == 0) return origin_present;
        return in_range(p, q) && filled[slot(p, q)] != 0;
    }
    Complex at(int p, int q) const {
        if (p == 0 && q == 0) {
            if (!origin_present) throw std::out_of_range("SpectrumTable: origin not present");
            return origin_value;
        }
        if (!has(p, q)) throw std::out_of_range("SpectrumTable::at: value not present");
        return values[slot(p, q)];
    }

    /// DC surrogate: average of the four nearest lattice values, tagged synthetic.
    void synthesize_origin() {
        Complex s(0.0, 0.0);
        int cnt = 0;
        for (auto [p, q] : {std::pair{1, 0}, std::pair{-1, 0}, std::pair{0, 1}, std::pair{0, -1}}) {
            if (has(p, q)) {
                s += at(p, q);
                ++cnt;
            }
        }
        origin_value = cnt > 0 ? s / static_cast<double>(cnt) : Complex(0.0, 0.0);
        origin_present = true;
        origin_synthetic = true;
    }
};

/// Trapezoidal quadrature of field(x) e^{+i x . xi} over the square.
inline Complex direct_fourier(const ScalarField2D& field, double xi_x, double xi_y) {
    const Grid2D& g = field.grid;
    const Complex iu(0.0, 1.0);
    Complex sum(0.0, 0.0);
    for (int i = 0; i < g.n; ++i) {
        const double wi = (i == 0 || i == g.n - 1) ? 0.5 : 1.0;
        const double x = g.x(i);
        for (int j = 0; j < g.n; ++j) {
            const double wj = (j == 0 || j == g.n - 1) ? 0.5 : 1.0;
            sum += wi * wj * field.at(i, j) * std::exp(iu * (x * xi_x + g.y(j) * xi_y));
        }
    }
    return sum * (g.h * g.h);
}

/// Reference table: direct transform of a known field at every lattice point,
/// with the true DC value at the origin.
inline SpectrumTable table_from_field(const ScalarField2D& field, double band_radius,
                                      int margin = 2, int ell_tag = 0) {
    SpectrumTable t(FrequencyGrid::make(band_radius, margin), ell_tag);
    for (auto [p, q] : t.freq.points)
        t.set(p, q, direct_fourier(field, t.freq.xi_x(p), t.freq.xi_y(q)));
    t.origin_value = direct_fourier(field, 0.0, 0.0);
    t.origin_present = true;
    t.origin_synthetic = false;
    return t;
}

namespace detail {

/// Nearest stored lattice value; used when an interpolation cell is incomplete
/// (clamp-to-band fallback).
inline Complex nearest_value(const SpectrumTable& t, double sx, double sy) {
    const int pc = static_cast<int>(std::lround(sx));
    const int qc = static_cast<int>(std::lround(sy));
    for (int ring = 0; ring <= 2 * t.freq.pmax + 2; ++ring) {
        double best = 1e300;
        Complex best_v(0.0, 0.0);
        bool found = false;
        for (int p = pc - ring; p <= pc + ring; ++p) {
            for (int q = qc - ring; q <= qc + ring; ++q) {
                if (std::max(std::abs(p - pc), std::abs(q - qc)) != ring) continue;
                if (!t.in_range(p, q) || !t.has(p, q)) continue;
                const double d = std::hypot(sx - p, sy - q);
                if (d < best) {
                    best = d;
                    best_v = t.at(p, q);
                    found = true;
                }
            }
        }
        if (found) return best_v;
    }
    throw std::runtime_error("interpolate_spectrum: table is empty");
}

inline double catmull_rom_weight(double t, int k) {
    // cubic convolution weights for offsets k = -1, 0, 1, 2 at parameter t
    switch (k) {
        case -1: return 0.5 * (-t * t * t + 2.0 * t * t - t);
        case 0: return 0.5 * (3.0 * t * t * t - 5.0 * t * t + 2.0);
        case 1: return 0.5 * (-3.0 * t * t * t + 4.0 * t * t + t);
        default: return 0.5 * (t * t * t - t * t);
    }
}

}  // namespace detail

/// Interpolate the table at an off-lattice frequency. Exact (bitwise) at
/// stored lattice points; bilinear by default, bicubic on request.
inline Complex interpolate_spectrum(const SpectrumTable& t, double xi_x, double xi_y,
                                    InterpOrder order = InterpOrder::bilinear) {
    const double rmax = t.freq.band_radius + t.freq.margin * kTwoPi;
    if (std::hypot(xi_x, xi_y) > rmax * (1.0 + 1e-9))
        throw OutOfBandError("interpolate_spectrum: query outside the margined band");
    const double sx = xi_x / kTwoPi;
    const double sy = xi_y / kTwoPi;
    const int pr = static_cast<int>(std::lround(sx));
    const int qr = static_cast<int>(std::lround(sy));
    if (std::abs(sx - pr) < 1e-9 && std::abs(sy - qr) < 1e-9 && t.has(pr, qr))
        return t.at(pr, qr);

    const int p0 = static_cast<int>(std::floor(sx));
    const int q0 = static_cast<int>(std::floor(sy));
    const double fx = sx - p0;
    const double fy = sy - q0;

    if (order == InterpOrder::bicubic) {
        bool complete = true;
        for (int dp = -1; dp <= 2 && complete; ++dp)
            for (int dq = -1; dq <= 2 && complete; ++dq)
                complete = t.has(p0 + dp, q0 + dq);
        if (complete) {
            Complex sum(0.0, 0.0);
            for (int dp = -1; dp <= 2; ++dp) {
                const double wx = detail::catmull_rom_weight(fx, dp);
                for (int dq = -1; dq <= 2; ++dq)
                    sum += wx * detail::catmull_rom_weight(fy, dq) * t.at(p0 + dp, q0 + dq);
            }
            return sum;
        }
    }

    if (t.has(p0, q0) && t.has(p0 + 1, q0) && t.has(p0, q0 + 1) && t.has(p0 + 1, q0 + 1)) {
        return (1.0 - fx) * (1.0 - fy) * t.at(p0, q0) + fx * (1.0 - fy) * t.at(p0 + 1, q0) +
               (1.0 - fx) * fy * t.at(p0, q0 + 1) + fx * fy * t.at(p0 + 1, q0 + 1);
    }
    return detail::nearest_value(t, sx, sy);
}

/// Truncated Fourier series c(x) = sum_{|xi| <= R} F(xi) e^{-i x . xi};
/// on the 2*pi lattice of the unit square the series weights are unity.
inline ScalarField2D inverse_fourier_truncated(const SpectrumTable& t, const Grid2D& grid) {
    std::vector<std::pair<int, int>> modes;
    for (auto [p, q] : t.freq.points)
        if (t.freq.in_band(p, q) && t.has(p, q)) modes.emplace_back(p, q);
    if (modes.empty() && !t.origin_present)
        throw std::invalid_argument("inverse_fourier_truncated: empty band");

    ScalarField2D out(grid);
    const Complex iu(0.0, 1.0);
    if (t.origin_present)
        for (Complex& v : out.values) v = t.origin_value;
    // separable phases keep this O(n^2 * modes) with small constants
    for (auto [p, q] : modes) {
        const Complex v = t.at(p, q);
        for (int i = 0; i < grid.n; ++i) {
            const Complex phx = std::exp(-iu * (kTwoPi * p * grid.x(i)));
            for (int j = 0; j < grid.n; ++j)
                out.at(i, j) += v * phx * std::exp(-iu * (kTwoPi * q * grid.y(j)));
        }
    }
    return out;
}

/// Projection onto the modes |xi| <= R (round trip through the lattice).
inline ScalarField2D band_limit(const ScalarField2D& field, double band_radius) {
    SpectrumTable t = table_from_field(field, band_radius, 0);
    return inverse_fourier_truncated(t, field.grid);
}

}  // namespace helminv
