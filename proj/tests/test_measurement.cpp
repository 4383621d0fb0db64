#include <helminv/config.hpp>
#include <helminv/measurement.hpp>
#include <helminv/spectral.hpp>

#include <doctest.h>

#include <cmath>
#include <random>

using namespace helminv;

TEST_SUITE_BEGIN("measurement");

namespace {

std::vector<ScalarField2D> small_truth(const Grid2D& g, int m, double amplitude = 0.25) {
    ExperimentConfig cfg;
    cfg.m = m;
    cfg.amplitude = amplitude;
    return cfg.make_truth(g);
}

}  // namespace

TEST_CASE("oracle data identities") {
    const double k = 10.0;
    const Grid2D g = Grid2D::make(101);
    const auto coeffs = small_truth(g, 2);
    SUBCASE("top level equals the direct transform (shared quadrature)") {
        for (const Vec2 xi : {Vec2{kTwoPi, 0.0}, Vec2{2 * kTwoPi, kTwoPi}, Vec2{-kTwoPi, 2 * kTwoPi}}) {
            const Complex lhs = oracle_d(2, xi, k, coeffs, g);
            const Complex rhs = direct_fourier(coeffs[1], xi.x, xi.y);
            CHECK(std::abs(lhs - rhs) < 1e-10);
        }
    }
    SUBCASE("l=1, m=2: data is F[c1](xi) + F[c2](xi + zeta_{1,1})") {
        for (const Vec2 xi : {Vec2{kTwoPi, kTwoPi}, Vec2{0.0, 2 * kTwoPi}}) {
            const auto set = build_wavevector_set(1, xi, k);
            REQUIRE(set.is_real);
            const Complex expect =
                direct_fourier(coeffs[0], xi.x, xi.y) +
                direct_fourier(coeffs[1], xi.x + set.zetas[0].x.real(),
                               xi.y + set.zetas[0].y.real());
            CHECK(std::abs(oracle_d(1, xi, k, coeffs, g) - expect) < 1e-10);
        }
    }
    SUBCASE("zero coefficients give exactly zero") {
        std::vector<ScalarField2D> zero{ScalarField2D(g), ScalarField2D(g)};
        CHECK(oracle_d(2, {kTwoPi, 0.0}, k, zero, g) == Complex(0.0, 0.0));
    }
    SUBCASE("conjugate-frequency symmetry for real coefficients") {
        for (int ell : {1, 2}) {
            const Vec2 xi{kTwoPi, -2 * kTwoPi};
            const Complex plus = oracle_d(ell, xi, k, coeffs, g);
            const Complex minus = oracle_d(ell, {-xi.x, -xi.y}, k, coeffs, g);
            CHECK(std::abs(minus - std::conj(plus)) < 1e-12);
        }
    }
    SUBCASE("xi = 0 rejected") {
        CHECK_THROWS_AS((void)oracle_d(1, {0.0, 0.0}, k, coeffs, g), std::domain_error);
    }
}

TEST_CASE("measured data") {
    const double k = 10.0;
    const Grid2D g = Grid2D::make(81);
    HelmholtzOperator op = HelmholtzOperator::assemble(g, k);
    SUBCASE("zero coefficients give zero data") {
        std::vector<ScalarField2D> zero{ScalarField2D(g), ScalarField2D(g)};
        for (int ell : {1, 2}) {
            const Complex d = measure_d(ell, {kTwoPi, kTwoPi}, op, zero, op.geometry());
            CHECK(std::abs(d) < 1e-8);
        }
    }
    SUBCASE("l = 1 reduces to the single-subset integral") {
        const auto coeffs = small_truth(g, 2);
        const Vec2 xi{kTwoPi, 0.0};
        const auto set = build_wavevector_set(1, xi, k);
        const BoundaryTrace f0 = plane_wave_trace(op.geometry(), set.zeta0);
        const BoundaryTrace f1 = plane_wave_trace(op.geometry(), set.zetas[0]);
        const auto u0 = op.solve(ScalarField2D(g), f1);
        const auto full = solve_nonlinear(op, coeffs, f1);
        const BoundaryTrace lam =
            linearized_neumann(neumann_trace(full.u, op.geometry()),
                               neumann_trace(u0, op.geometry()));
        const Complex direct = boundary_integral(f0, lam, op.geometry());
        CHECK(std::abs(measure_d(1, xi, op, coeffs, op.geometry()) - direct) < 1e-13);
    }
    SUBCASE("measured matches the oracle within the linearization error") {
        const auto coeffs = small_truth(g, 2);
        for (int ell : {1, 2}) {
            const Vec2 xi{kTwoPi, kTwoPi};
            const Complex meas = measure_d(ell, xi, op, coeffs, op.geometry());
            const Complex orac = oracle_d(ell, xi, k, coeffs, g);
            // quadratic remainder plus discretization; loose but meaningful
            CHECK(std::abs(meas - orac) < 0.15 * std::abs(orac) + 1e-5);
        }
    }
    SUBCASE("determinism: repeated calls agree bitwise") {
        const auto coeffs = small_truth(g, 2);
        const Vec2 xi{-kTwoPi, 2 * kTwoPi};
        const Complex a = measure_d(2, xi, op, coeffs, op.geometry());
        const Complex b = measure_d(2, xi, op, coeffs, op.geometry());
        CHECK(a == b);
    }
    SUBCASE("evanescent cap trips far outside the band") {
        const auto coeffs = small_truth(g, 2);
        const Vec2 far{8.0 * k, 0.0};  // deep evanescent for l = 1
        CHECK_THROWS_AS((void)measure_d(1, far, op, coeffs, op.geometry()), EvanescentCapError);
    }
    SUBCASE("amplitude sweep: linearized response is first order in c") {
        const Vec2 xi{kTwoPi, 0.0};
        const Complex d1 = measure_d(1, xi, op, small_truth(g, 2, 0.1), op.geometry());
        const Complex d2 = measure_d(1, xi, op, small_truth(g, 2, 0.05), op.geometry());
        const double ratio = std::abs(d1) / std::abs(d2);
        CHECK(ratio > 1.8);
        CHECK(ratio < 2.2);
    }
}

TEST_CASE("noise model") {
    SUBCASE("zero level is a no-op") {
        BoundaryTrace t(16, Complex(1.0, -2.0));
        const BoundaryTrace ref = t;
        NoiseModel noise{0.0, 42};
        std::mt19937_64 rng(noise.seed);
        noise.apply(t, rng);
        for (std::size_t a = 0; a < t.values.size(); ++a) CHECK(t.values[a] == ref.values[a]);
    }
    SUBCASE("fixed seed gives reproducible perturbations of the right size") {
        NoiseModel noise{0.01, 42};
        BoundaryTrace t1(64, Complex(1.0, 0.0)), t2(64, Complex(1.0, 0.0));
        std::mt19937_64 r1(7), r2(7);
        noise.apply(t1, r1);
        noise.apply(t2, r2);
        double dev = 0.0;
        for (std::size_t a = 0; a < t1.values.size(); ++a) {
            CHECK(t1.values[a] == t2.values[a]);
            dev = std::max(dev, std::abs(t1.values[a] - Complex(1.0, 0.0)));
        }
        CHECK(dev > 0.0);
        CHECK(dev < 0.1);  // relative level 1e-2, a few sigma
    }
}

TEST_SUITE_END();
