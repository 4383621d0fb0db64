#pragma once

#include "combinatorics.hpp"
#include "grid.hpp"
#include "measurement.hpp"
#include "spectral.hpp"
#include "wavevectors.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace helminv {

enum class DataSource { oracle, full };

struct ReconstructionPlan {
    int m = 2;
    double k = 10.0;
    Grid2D inv_grid;
    DataSource source = DataSource::oracle;
    InterpOrder interp = InterpOrder::bilinear;
    int margin = 2;
    int workers = 1;

    double band_radius(int ell) const { return (ell + 1) * k; }
};

struct RelErr {
    double value = 0.0;
    bool absolute = false;  // true when the reference is zero
};

inline RelErr relative_l2_error(const ScalarField2D& recon, const ScalarField2D& reference) {
    require_same_grid(recon, reference);
    double diff = 0.0, ref = 0.0;
    for (std::size_t p = 0; p < recon.values.size(); ++p) {
        diff += std::norm(recon.values[p] - reference.values[p]);
        ref += std::norm(reference.values[p]);
    }
    if (ref == 0.0) return {std::sqrt(diff), true};
    return {std::sqrt(diff / ref), false};
}

namespace detail {

inline void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int nthreads = std::min<int>(workers, static_cast<int>(count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Interpolate with radial clamping: queries past the margined band are pulled
/// back to the band edge (the configured fallback when the evanescent cap
/// trimmed the margin ring).
inline Complex query_spectrum(const SpectrumTable& t, double xi_x, double xi_y,
                              InterpOrder order) {
    const double rmax = t.freq.band_radius + t.freq.margin * kTwoPi;
    const double r = std::hypot(xi_x, xi_y);
    if (r > rmax) {
        const double s = rmax / r * (1.0 - 1e-12);
        xi_x *= s;
        xi_y *= s;
    }
    return interpolate_spectrum(t, xi_x, xi_y, order);
}

}  // namespace detail

/// Triangular solve of the operator system: F[c_m] = d_m verbatim, then each
/// lower table gets its Q-operator corrections from already-recovered spectra.
inline std::vector<SpectrumTable> back_substitute(const std::vector<SpectrumTable>& d_tables,
                                                  const ReconstructionPlan& plan) {
    const int m = plan.m;
    if (static_cast<int>(d_tables.size()) != m)
        throw std::invalid_argument("back_substitute: need one data table per ell");
    std::vector<SpectrumTable> recovered(d_tables);  // ell = m copied verbatim
    // interpolation stencils near |xi| ~ 2*pi touch the excluded origin; give
    // every table its synthetic DC before anything reads it
    recovered[static_cast<std::size_t>(m - 1)].synthesize_origin();

    for (int ell = m - 1; ell >= 1; --ell) {
        SpectrumTable& table = recovered[static_cast<std::size_t>(ell - 1)];
        const SpectrumTable& data = d_tables[static_cast<std::size_t>(ell - 1)];
        for (auto [p, q] : data.freq.points) {
            if (!data.has(p, q)) continue;
            const Vec2 xi{data.freq.xi_x(p), data.freq.xi_y(q)};
            WaveVectorSet set = build_wavevector_set(ell, xi, plan.k);
            Complex val = data.at(p, q);
            for (int a = 1; a <= m - ell; ++a) {
                const SpectrumTable& higher = recovered[static_cast<std::size_t>(ell + a - 1)];
                for (const auto& [alpha, weight] : q_polynomial(ell, a).terms) {
                    WaveVector shift = set.shift(alpha);
                    // margin-ring xi may carry a complex shift; the real part
                    // locates the query, clamping absorbs the rest
                    const double qx = xi.x + shift.x.real();
                    const double qy = xi.y + shift.y.real();
                    val -= static_cast<double>(weight) *
                           detail::query_spectrum(higher, qx, qy, plan.interp);
                }
            }
            table.set(p, q, val);
        }
        table.synthesize_origin();
    }
    return recovered;
}

struct FullModeContext {
    const HelmholtzOperator* op = nullptr;   // assembled on the forward grid
    std::vector<ScalarField2D> coeffs;       // truth sampled on the forward grid
    PicardOptions picard;
    NoiseModel noise;
    mutable std::atomic<long> nonlinear_solves{0};  // actual solver invocations
};

struct EllResult {
    int ell = 0;
    SpectrumTable data;       // d_ell
    SpectrumTable corrected;  // recovered F[c_ell]
    ScalarField2D naive_field;
    ScalarField2D corrected_field;
    RelErr naive_err;
    RelErr corrected_err;
    long lattice_points = 0;  // N_ell actually evaluated
};

struct ReconstructionResult {
    std::vector<EllResult> per_ell;  // index ell - 1
    long solve_count = 0;            // nonlinear forward solves (full mode)
    double wall_seconds = 0.0;
};

/// Build the data tables for one ell (oracle quadrature or simulated
/// measurements); margin points whose evanescent cap trips are skipped.
inline SpectrumTable build_data_table(int ell, const ReconstructionPlan& plan,
                                      const std::vector<ScalarField2D>& truth,
                                      const FullModeContext* fwd, long* evaluated_points) {
    SpectrumTable table(FrequencyGrid::make(plan.band_radius(ell), plan.margin), ell);
    const auto& pts = table.freq.points;
    std::vector<Complex> vals(pts.size());
    std::vector<char> ok(pts.size(), 0);

    detail::parallel_for(pts.size(), plan.workers, [&](std::size_t idx) {
        const Vec2 xi{table.freq.xi_x(pts[idx].first), table.freq.xi_y(pts[idx].second)};
        if (plan.source == DataSource::oracle) {
            vals[idx] = oracle_d(ell, xi, plan.k, truth, plan.inv_grid);
            ok[idx] = 1;
        } else {
            try {
                // per-point rng keeps noise invariant under the parallel schedule
                std::mt19937_64 rng(fwd->noise.seed ^
                                    (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(ell) +
                                     0x100000001b3ull * static_cast<std::uint64_t>(
                                                            (pts[idx].first + 512) * 1024 +
                                                            (pts[idx].second + 512))));
                vals[idx] = measure_d(ell, xi, *fwd->op, fwd->coeffs, fwd->op->geometry(),
                                      fwd->picard, &fwd->noise, &rng, &fwd->nonlinear_solves);
                ok[idx] = 1;
            } catch (const EvanescentCapError&) {
                // margin point outside the usable ring; interpolation clamps
            }
        }
    });
    long n = 0;
    for (std::size_t idx = 0; idx < pts.size(); ++idx) {
        if (ok[idx]) {
            table.set(pts[idx].first, pts[idx].second, vals[idx]);
            ++n;
        }
    }
    if (evaluated_points) *evaluated_points = n;
    return table;
}

/// Algorithm end-to-end: data tables, triangular correction, truncated inverse
/// synthesis, and errors against band-limited truth.
inline ReconstructionResult reconstruct(const ReconstructionPlan& plan,
                                        const std::vector<ScalarField2D>& truth,
                                        const FullModeContext* fwd = nullptr) {
    if (static_cast<int>(truth.size()) != plan.m)
        throw std::invalid_argument("reconstruct: need one truth coefficient per ell");
    if (plan.source == DataSource::full) {
        if (fwd == nullptr || fwd->op == nullptr)
            throw std::invalid_argument("reconstruct: full mode needs a forward model");
        if (static_cast<int>(fwd->coeffs.size()) != plan.m)
            throw std::invalid_argument("reconstruct: forward model needs one coefficient per ell");
        for (const auto& c : fwd->coeffs)
            if (c.grid != fwd->op->grid())
                throw std::invalid_argument(
                    "reconstruct: forward coefficients must live on the forward grid");
        fwd->nonlinear_solves.store(0);
    }
    for (const auto& c : truth)
        if (c.grid != plan.inv_grid)
            throw std::invalid_argument("reconstruct: truth must live on the inversion grid");

    const auto t0 = std::chrono::steady_clock::now();
    ReconstructionResult result;
    result.per_ell.resize(static_cast<std::size_t>(plan.m));

    std::vector<SpectrumTable> d_tables;
    d_tables.reserve(static_cast<std::size_t>(plan.m));
    for (int ell = 1; ell <= plan.m; ++ell) {
        long n = 0;
        d_tables.push_back(build_data_table(ell, plan, truth, fwd, &n));
        EllResult& er = result.per_ell[static_cast<std::size_t>(ell - 1)];
        er.ell = ell;
        er.lattice_points = n;
    }
    // actual count, not the formula; the two must agree
    if (plan.source == DataSource::full) result.solve_count = fwd->nonlinear_solves.load();

    std::vector<SpectrumTable> recovered = back_substitute(d_tables, plan);

    for (int ell = 1; ell <= plan.m; ++ell) {
        EllResult& er = result.per_ell[static_cast<std::size_t>(ell - 1)];
        er.data = std::move(d_tables[static_cast<std::size_t>(ell - 1)]);
        er.corrected = std::move(recovered[static_cast<std::size_t>(ell - 1)]);
        er.data.synthesize_origin();
        er.corrected.synthesize_origin();
        er.naive_field = inverse_fourier_truncated(er.data, plan.inv_grid);
        er.corrected_field = inverse_fourier_truncated(er.corrected, plan.inv_grid);
        ScalarField2D reference =
            band_limit(truth[static_cast<std::size_t>(ell - 1)], plan.band_radius(ell));
        er.naive_err = relative_l2_error(er.naive_field, reference);
        er.corrected_err = relative_l2_error(er.corrected_field, reference);
    }
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace helminv
