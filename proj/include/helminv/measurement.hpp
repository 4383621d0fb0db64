#pragma once

#include "boundary.hpp"
#include "combinatorics.hpp"
#include "grid.hpp"
#include "helmholtz.hpp"
#include "wavevectors.hpp"

#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace helminv {

struct EvanescentCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Optional relative Gaussian perturbation of measured Neumann traces.
struct NoiseModel {
    double level = 0.0;
    std::uint64_t seed = 0;

    void apply(BoundaryTrace& trace, std::mt19937_64& rng) const {
        if (level <= 0.0) return;
        std::normal_distribution<double> dist(0.0, 1.0);
        for (Complex& v : trace.values)
            v *= Complex(1.0 + level * dist(rng), level * dist(rng));
    }
};

struct MeasurementRecord {
    int ell = 0;
    Vec2 xi;
    std::vector<int> subset;
    Complex value{0.0, 0.0};
    std::string provenance;  // "measured" | "oracle"
};

namespace detail {

// growth factor e^{|Im zeta| * diag} must stay below e
inline void check_evanescent_cap(const WaveVectorSet& set) {
    if (set.is_real) return;
    double max_imag = set.zeta0.max_imag();
    for (const WaveVector& z : set.zetas) max_imag = std::max(max_imag, z.max_imag());
    const double diag = std::sqrt(2.0);
    if (max_imag * diag > 1.0)
        throw EvanescentCapError("evanescent growth cap exceeded at |xi| = " +
                                 std::to_string(set.xi.norm()));
}

}  // namespace detail

/// Inclusion-exclusion data d_l(xi) from simulated boundary measurements:
/// for each non-empty subset, solve the full nonlinear and the background
/// problem, difference their Neumann traces, and pair with the test trace.
inline Complex measure_d(int ell, const Vec2& xi, const HelmholtzOperator& op,
                         const std::vector<ScalarField2D>& coeffs,
                         const BoundaryGeometry& geometry, const PicardOptions& opts = {},
                         const NoiseModel* noise = nullptr, std::mt19937_64* rng = nullptr,
                         std::atomic<long>* nonlinear_solves = nullptr) {
    WaveVectorSet set = build_wavevector_set(ell, xi, op.wavenumber());
    detail::check_evanescent_cap(set);

    const BoundaryTrace f0 = plane_wave_trace(geometry, set.zeta0);
    std::vector<BoundaryTrace> fj;
    fj.reserve(static_cast<std::size_t>(ell));
    for (const WaveVector& z : set.zetas) fj.push_back(plane_wave_trace(geometry, z));

    ScalarField2D zero(op.grid());
    Complex acc(0.0, 0.0);
    for (const SignedSubset& s : signed_subsets(ell)) {
        BoundaryTrace f_s(geometry.size());
        for (int j : s.members)
            for (std::size_t a = 0; a < f_s.values.size(); ++a)
                f_s.values[a] += fj[static_cast<std::size_t>(j - 1)].values[a];
        try {
            ScalarField2D u0 = op.solve(zero, f_s);
            NonlinearSolution full = solve_nonlinear(op, coeffs, f_s, opts);
            if (nonlinear_solves) nonlinear_solves->fetch_add(1);
            BoundaryTrace neumann_full = neumann_trace(full.u, geometry);
            BoundaryTrace neumann_bg = neumann_trace(u0, geometry);
            if (noise && rng) {
                noise->apply(neumann_full, *rng);
            }
            BoundaryTrace lam = linearized_neumann(neumann_full, neumann_bg);
            acc += static_cast<double>(s.sign) * boundary_integral(f0, lam, geometry);
        } catch (const PicardDivergenceError& e) {
            std::string subset_str;
            for (int j : s.members) subset_str += std::to_string(j);
            throw PicardDivergenceError("measure_d(ell=" + std::to_string(ell) +
                                            ", |xi|=" + std::to_string(xi.norm()) + ", S={" +
                                            subset_str + "}): " + e.what(),
                                        e.last_update);
        }
    }
    return acc / static_cast<double>(big_factorial(ell));
}

/// Quadrature oracle for d_l(xi): analytic plane waves and the volume identity,
/// bypassing the PDE solver and the DtN linearization entirely.
inline Complex oracle_d(int ell, const Vec2& xi, double k, const std::vector<ScalarField2D>& coeffs,
                        const Grid2D& grid) {
    if (xi.norm() == 0.0) throw std::domain_error("oracle_d: xi must be nonzero");
    WaveVectorSet set = build_wavevector_set(ell, xi, k);
    ScalarField2D phi = plane_wave_field(grid, set.zeta0);
    std::vector<ScalarField2D> uj;
    uj.reserve(static_cast<std::size_t>(ell));
    for (const WaveVector& z : set.zetas) uj.push_back(plane_wave_field(grid, z));

    Complex acc(0.0, 0.0);
    for (const SignedSubset& s : signed_subsets(ell)) {
        ScalarField2D u_s(grid);
        for (int j : s.members)
            for (std::size_t p = 0; p < u_s.values.size(); ++p)
                u_s.values[p] += uj[static_cast<std::size_t>(j - 1)].values[p];
        ScalarField2D integrand = evaluate_polynomial(coeffs, u_s);
        for (std::size_t p = 0; p < integrand.values.size(); ++p)
            integrand.values[p] *= phi.values[p];
        acc += static_cast<double>(s.sign) * volume_quadrature(integrand);
    }
    return acc / static_cast<double>(big_factorial(ell));
}

}  // namespace helminv
