#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace helminv {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    double norm() const { return std::hypot(x, y); }
};

/// Complex 2-vector with the bilinear (non-conjugated) self-product.
struct WaveVector {
    std::complex<double> x{0.0, 0.0};
    std::complex<double> y{0.0, 0.0};

    std::complex<double> dot(const WaveVector& o) const { return x * o.x + y * o.y; }
    std::complex<double> dot_real(const Vec2& v) const { return x * v.x + y * v.y; }
    bool is_real(double tol = 0.0) const {
        return std::abs(x.imag()) <= tol && std::abs(y.imag()) <= tol;
    }
    double max_imag() const { return std::max(std::abs(x.imag()), std::abs(y.imag())); }
};

inline WaveVector operator+(const WaveVector& a, const WaveVector& b) {
    return {a.x + b.x, a.y + b.y};
}
inline WaveVector operator*(double s, const WaveVector& a) { return {s * a.x, s * a.y}; }

/// zeta_l^+/- of the construction: components along e1 = xi/|xi| and its
/// counterclockwise rotation e2. Negative radicands take the branch +i*sqrt|r|.
inline std::pair<WaveVector, WaveVector> build_zeta_pm(int l, const Vec2& xi, double k) {
    if (l < 1) throw std::invalid_argument("build_zeta_pm: l must be >= 1");
    if (!(k > 0.0)) throw std::invalid_argument("build_zeta_pm: k must be positive");
    const double xin = xi.norm();
    if (xin == 0.0) throw std::domain_error("build_zeta_pm: xi must be nonzero");
    const Vec2 e1{xi.x / xin, xi.y / xin};
    const Vec2 e2{-e1.y, e1.x};

    const double t = (l % 2 == 1) ? xin / static_cast<double>(l + 1)
                                  : (xin - k) / static_cast<double>(l);
    const double radicand = k * k - t * t;
    std::complex<double> s = (radicand >= 0.0)
                                 ? std::complex<double>(std::sqrt(radicand), 0.0)
                                 : std::complex<double>(0.0, std::sqrt(-radicand));

    WaveVector plus{t * e1.x + s * e2.x, t * e1.y + s * e2.y};
    WaveVector minus{t * e1.x - s * e2.x, t * e1.y - s * e2.y};
    return {plus, minus};
}

/// The full set {zeta_{l,0}, zeta_{l,1..l}} for one (l, xi, k) triple.
struct WaveVectorSet {
    int l = 0;
    Vec2 xi;
    double k = 0.0;
    WaveVector zeta0;
    std::vector<WaveVector> zetas;  // zeta_{l,1} .. zeta_{l,l}
    bool is_real = false;

    /// Frequency shift sum_j alpha_j * zeta_{l,j} for a multi-index alpha.
    WaveVector shift(const std::vector<int>& alpha) const {
        WaveVector s;
        for (int j = 0; j < l; ++j)
            s = s + static_cast<double>(alpha[static_cast<std::size_t>(j)]) *
                        zetas[static_cast<std::size_t>(j)];
        return s;
    }
};

inline WaveVectorSet build_wavevector_set(int l, const Vec2& xi, double k) {
    auto [plus, minus] = build_zeta_pm(l, xi, k);
    WaveVectorSet set;
    set.l = l;
    set.xi = xi;
    set.k = k;
    set.zetas.reserve(static_cast<std::size_t>(l));
    if (l % 2 == 1) {
        set.zeta0 = minus;
    } else {
        const double xin = xi.norm();
        set.zeta0 = WaveVector{std::complex<double>(k * xi.x / xin, 0.0),
                               std::complex<double>(k * xi.y / xin, 0.0)};
    }
    // odd j -> zeta^+, even j -> zeta^-  (both parities of l)
    for (int j = 1; j <= l; ++j) set.zetas.push_back(j % 2 == 1 ? plus : minus);
    bool real = set.zeta0.is_real();
    for (const WaveVector& z : set.zetas) real = real && z.is_real();
    set.is_real = real;
    return set;
}

}  // namespace helminv
