#pragma once

#include "combinatorics.hpp"
#include "config.hpp"
#include "helmholtz.hpp"
#include "inversion.hpp"
#include "measurement.hpp"
#include "spectral.hpp"
#include "wavevectors.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace helminv {

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

inline CheckResult make_check(std::string name, double measured, double tolerance,
                              std::string detail = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.measured = measured;
    r.tolerance = tolerance;
    r.pass = measured <= tolerance;
    r.detail = std::move(detail);
    return r;
}

/// Identity battery: the signed-subset combination against the closed form
/// (zero below the diagonal, the product on it, product times Q above it).
inline CheckResult check_pie(std::uint64_t seed = 20240901) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double worst = 0.0;
    for (int l = 1; l <= 5; ++l) {
        for (int lp = 1; lp <= l + 3; ++lp) {
            for (int trial = 0; trial < 50; ++trial) {
                std::vector<Complex> w(static_cast<std::size_t>(l));
                for (Complex& v : w) v = Complex(dist(rng), dist(rng));
                const Complex got = pie_evaluate(l, lp, w);
                Complex expected(0.0, 0.0);
                if (lp >= l) {
                    Complex prod(1.0, 0.0);
                    for (const Complex& v : w) prod *= v;
                    expected = (lp == l) ? prod : prod * q_polynomial(l, lp - l).evaluate(w);
                }
                const double scale = std::max(1.0, std::abs(expected));
                worst = std::max(worst, std::abs(got - expected) / scale);
            }
        }
    }
    return make_check("pie", worst, 1e-10, "max relative deviation from the closed form");
}

/// Wave-vector constraints on random in-band and out-of-band samples.
inline CheckResult check_zeta(std::uint64_t seed = 20240902) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double ks[] = {1.5, 5.0, 20.0};
    double worst = 0.0;
    std::string fail_detail;
    for (int trial = 0; trial < 200; ++trial) {
        const int l = 1 + static_cast<int>(unit(rng) * 5.0);
        const double k = ks[trial % 3];
        // span both sides of the band edge |xi| = (l+1)k
        const double r = unit(rng) * (l + 1) * k * 1.4 + 1e-3;
        const double th = unit(rng) * kTwoPi;
        const Vec2 xi{r * std::cos(th), r * std::sin(th)};
        WaveVectorSet set = build_wavevector_set(l, xi, k);

        double res = std::abs(set.zeta0.dot(set.zeta0) - k * k) / (k * k);
        for (const WaveVector& z : set.zetas)
            res = std::max(res, std::abs(z.dot(z) - k * k) / (k * k));
        WaveVector sum = set.zeta0;
        for (const WaveVector& z : set.zetas) sum = sum + z;
        res = std::max(res, std::hypot(std::abs(sum.x - Complex(xi.x, 0.0)),
                                       std::abs(sum.y - Complex(xi.y, 0.0))) /
                                k);
        worst = std::max(worst, res);
        const bool in_band = r <= (l + 1) * k;
        if (set.is_real != in_band && std::abs(r - (l + 1) * k) > 1e-9) {
            worst = 1.0;
            fail_detail = "realness flag disagrees with the band test";
        }
    }
    CheckResult r = make_check("zeta", worst, 1e-12, "max constraint residual (relative)");
    if (!fail_detail.empty()) r.detail = fail_detail;
    return r;
}

/// Grid-halving convergence on an exact plane-wave solution; second order
/// means the sup error shrinks by about 4 per halving.
inline CheckResult check_solver() {
    const double k = 10.0;
    const Vec2 dir{0.6, 0.8};
    const WaveVector zeta{Complex(k * dir.x, 0.0), Complex(k * dir.y, 0.0)};
    std::vector<double> errs;
    for (int n : {51, 101, 201}) {
        const Grid2D grid = Grid2D::make(n);
        HelmholtzOperator op = HelmholtzOperator::assemble(grid, k);
        const ScalarField2D exact = plane_wave_field(grid, zeta);
        const BoundaryTrace g = plane_wave_trace(op.geometry(), zeta);
        const ScalarField2D u = op.solve(ScalarField2D(grid), g);
        double sup = 0.0;
        for (std::size_t p = 0; p < u.values.size(); ++p)
            sup = std::max(sup, std::abs(u.values[p] - exact.values[p]));
        errs.push_back(sup);
    }
    const double r1 = errs[0] / errs[1];
    const double r2 = errs[1] / errs[2];
    const double off =
        std::max({3.4 - r1, r1 - 4.6, 3.4 - r2, r2 - 4.6, 0.0});
    CheckResult r = make_check("solver", off, 0.0,
                               "ratios " + std::to_string(r1) + ", " + std::to_string(r2) +
                                   " vs [3.4, 4.6]");
    r.pass = off <= 0.0;
    return r;
}

/// Transform round trip: band limiting is a projection (idempotent), and
/// interpolation reproduces stored lattice values bitwise.
inline CheckResult check_spectral() {
    const Grid2D grid = Grid2D::make(81);
    const auto truth = ExperimentConfig{}.make_truth(grid);
    const double R = 25.0;
    double worst = 0.0;
    const ScalarField2D once = band_limit(truth[0], R);
    const ScalarField2D twice = band_limit(once, R);
    RelErr idem = relative_l2_error(twice, once);
    worst = std::max(worst, idem.value);
    SpectrumTable t = table_from_field(truth[0], R, 2);
    for (auto [p, q] : t.freq.points) {
        const Complex stored = t.at(p, q);
        for (InterpOrder ord : {InterpOrder::bilinear, InterpOrder::bicubic}) {
            const Complex back = interpolate_spectrum(t, t.freq.xi_x(p), t.freq.xi_y(q), ord);
            if (back != stored) worst = std::max(worst, 1.0);
        }
        // a real field has a Hermitian spectrum
        if (t.in_range(-p, -q) && t.has(-p, -q))
            worst = std::max(worst, std::abs(t.at(-p, -q) - std::conj(stored)));
    }
    return make_check("spectral", worst, 1e-9,
                      "projection idempotence, lattice exactness, Hermitian symmetry");
}

/// Linearization remainder scaling: halving the coefficient amplitude should
/// shrink the measured-vs-quadrature gap by about 4 (quadratic remainder).
inline CheckResult check_scaling(int grid_n = 101, double k = 10.0) {
    const Grid2D grid = Grid2D::make(grid_n);
    HelmholtzOperator op = HelmholtzOperator::assemble(grid, k);
    ExperimentConfig cfg;
    cfg.m = 2;
    cfg.k = k;
    // strong-contrast diagnostic truth: the quadratic remainder must dominate
    // the O(h^2) solver bias for the amplitude-halving ratio to be visible
    cfg.bumps = ExperimentConfig::default_bumps(2);
    for (auto& spec : cfg.bumps)
        for (auto& b : spec) b.amplitude *= 18.0;
    auto gap = [&](double amplitude) {
        cfg.amplitude = amplitude;
        const auto coeffs = cfg.make_truth(grid);
        double worst = 0.0;
        for (int ell = 1; ell <= 2; ++ell) {
            FrequencyGrid fg = FrequencyGrid::make((ell + 1) * k, 0);
            for (auto [p, q] : fg.points) {
                const Vec2 xi{fg.xi_x(p), fg.xi_y(q)};
                const Complex meas = measure_d(ell, xi, op, coeffs, op.geometry());
                const Complex orac = oracle_d(ell, xi, k, coeffs, grid);
                worst = std::max(worst, std::abs(meas - orac));
            }
        }
        return worst;
    };
    const double d_hi = gap(0.25);
    const double d_lo = gap(0.125);
    const double ratio = d_hi / d_lo;
    const double off = std::max({3.2 - ratio, ratio - 4.8, 0.0});
    CheckResult r = make_check("scaling", off, 0.0,
                               "gap ratio " + std::to_string(ratio) + " vs [3.2, 4.8]");
    r.pass = off <= 0.0;
    return r;
}

/// Run the named checks; empty selection yields an empty passing report.
inline std::vector<CheckResult> verify_suite(const std::vector<std::string>& selection) {
    std::vector<CheckResult> out;
    for (const std::string& name : selection) {
        if (name == "pie") out.push_back(check_pie());
        else if (name == "zeta") out.push_back(check_zeta());
        else if (name == "solver") out.push_back(check_solver());
        else if (name == "spectral") out.push_back(check_spectral());
        else if (name == "scaling") out.push_back(check_scaling());
        else throw std::invalid_argument("unknown check '" + name +
                                         "' (have pie, zeta, solver, spectral, scaling)");
    }
    return out;
}

}  // namespace helminv
