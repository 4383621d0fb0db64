#include <helminv/combinatorics.hpp>
#include <helminv/wavevectors.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace helminv;

namespace {
double cdist(const std::complex<double>& a, const std::complex<double>& b) {
    return std::abs(a - b);
}
}  // namespace

TEST_SUITE_BEGIN("wavevectors");

TEST_CASE("zeta pair pinned examples") {
    SUBCASE("l=1, xi=(2k, 0): band edge, both vectors (k, 0)") {
        const double k = 3.0;
        auto [plus, minus] = build_zeta_pm(1, {2.0 * k, 0.0}, k);
        CHECK(cdist(plus.x, {k, 0.0}) < 1e-12);
        CHECK(cdist(plus.y, {0.0, 0.0}) < 1e-12);
        CHECK(cdist(minus.x, {k, 0.0}) < 1e-12);
        CHECK(cdist(minus.y, {0.0, 0.0}) < 1e-12);
    }
    SUBCASE("l=2, xi=(k, 0): tangential pair (0, +-k)") {
        const double k = 7.0;
        auto [plus, minus] = build_zeta_pm(2, {k, 0.0}, k);
        CHECK(cdist(plus.x, {0.0, 0.0}) < 1e-12);
        CHECK(cdist(plus.y, {k, 0.0}) < 1e-12);
        CHECK(cdist(minus.y, {-k, 0.0}) < 1e-12);
    }
    SUBCASE("l=3, xi=(4, 0), k=2: (1, +-sqrt(3))") {
        auto [plus, minus] = build_zeta_pm(3, {4.0, 0.0}, 2.0);
        CHECK(cdist(plus.x, {1.0, 0.0}) < 1e-12);
        CHECK(cdist(plus.y, {std::sqrt(3.0), 0.0}) < 1e-12);
        CHECK(cdist(minus.y, {-std::sqrt(3.0), 0.0}) < 1e-12);
    }
    SUBCASE("negative radicand takes the +i sqrt branch") {
        const double k = 1.0;
        auto [plus, minus] = build_zeta_pm(1, {4.0, 0.0}, k);  // t = 2 > k
        CHECK(plus.y.imag() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
        CHECK(minus.y.imag() == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-12));
    }
    SUBCASE("xi = 0 rejected") {
        CHECK_THROWS_AS((void)build_zeta_pm(1, {0.0, 0.0}, 1.0), std::domain_error);
        CHECK_THROWS_AS((void)build_wavevector_set(2, {0.0, 0.0}, 1.0), std::domain_error);
    }
}

TEST_CASE("wave-vector set assignments") {
    SUBCASE("l=1, xi=(2k, 0): both members (k, 0), sum = xi") {
        const double k = 5.0;
        const auto set = build_wavevector_set(1, {2.0 * k, 0.0}, k);
        REQUIRE(set.zetas.size() == 1);
        CHECK(cdist(set.zeta0.x, {k, 0.0}) < 1e-12);
        CHECK(cdist(set.zetas[0].x, {k, 0.0}) < 1e-12);
        WaveVector sum = set.zeta0 + set.zetas[0];
        CHECK(cdist(sum.x, {2.0 * k, 0.0}) < 1e-12);
        CHECK(cdist(sum.y, {0.0, 0.0}) < 1e-12);
    }
    SUBCASE("l=3, xi=(4,0), k=2: entries (1,s),(1,-s),(1,s), zeta0=(1,-s)") {
        const double s = std::sqrt(3.0);
        const auto set = build_wavevector_set(3, {4.0, 0.0}, 2.0);
        REQUIRE(set.zetas.size() == 3);
        CHECK(cdist(set.zeta0.y, {-s, 0.0}) < 1e-12);
        CHECK(cdist(set.zetas[0].y, {s, 0.0}) < 1e-12);
        CHECK(cdist(set.zetas[1].y, {-s, 0.0}) < 1e-12);
        CHECK(cdist(set.zetas[2].y, {s, 0.0}) < 1e-12);
        WaveVector sum = set.zeta0;
        for (const auto& z : set.zetas) sum = sum + z;
        CHECK(cdist(sum.x, {4.0, 0.0}) < 1e-12);
        CHECK(cdist(sum.y, {0.0, 0.0}) < 1e-12);
    }
    SUBCASE("even l: zeta0 = k e1") {
        const double k = 4.0;
        const Vec2 xi{3.0, 4.0};  // |xi| = 5
        const auto set = build_wavevector_set(2, xi, k);
        CHECK(cdist(set.zeta0.x, {k * 0.6, 0.0}) < 1e-12);
        CHECK(cdist(set.zeta0.y, {k * 0.8, 0.0}) < 1e-12);
    }
}

TEST_CASE("constraint battery over random triples") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double ks[] = {1.5, 5.0, 20.0};
    for (int trial = 0; trial < 200; ++trial) {
        const int l = 1 + static_cast<int>(unit(rng) * 5.0);
        const double k = ks[trial % 3];
        const double r = unit(rng) * (l + 1) * k + 1e-6;  // in the real band
        const double th = unit(rng) * 2.0 * std::numbers::pi;
        const Vec2 xi{r * std::cos(th), r * std::sin(th)};
        const auto set = build_wavevector_set(l, xi, k);

        CHECK(std::abs(set.zeta0.dot(set.zeta0) - k * k) <= 1e-12 * k * k);
        for (const auto& z : set.zetas) CHECK(std::abs(z.dot(z) - k * k) <= 1e-12 * k * k);
        WaveVector sum = set.zeta0;
        for (const auto& z : set.zetas) sum = sum + z;
        CHECK(std::hypot(cdist(sum.x, {xi.x, 0.0}), cdist(sum.y, {xi.y, 0.0})) <= 1e-12 * k);
        CHECK(set.is_real);
    }
}

TEST_CASE("realness is monotone across the band edge") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int l = 1 + static_cast<int>(unit(rng) * 5.0);
        const double k = 2.0 + 10.0 * unit(rng);
        const double edge = (l + 1) * k;
        const double th = unit(rng) * 2.0 * std::numbers::pi;
        const double r_in = unit(rng) * edge * 0.999 + 1e-6;
        const double r_out = edge * (1.001 + unit(rng));
        CHECK(build_wavevector_set(l, {r_in * std::cos(th), r_in * std::sin(th)}, k).is_real);
        CHECK_FALSE(
            build_wavevector_set(l, {r_out * std::cos(th), r_out * std::sin(th)}, k).is_real);
    }
}

TEST_CASE("shifted-frequency band containment") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int l = 1 + static_cast<int>(unit(rng) * 3.0);
        const double k = 3.0 + 10.0 * unit(rng);
        const double r = unit(rng) * (l + 1) * k + 1e-6;
        const double th = unit(rng) * 2.0 * std::numbers::pi;
        const Vec2 xi{r * std::cos(th), r * std::sin(th)};
        const auto set = build_wavevector_set(l, xi, k);
        for (int a = 1; a <= 2; ++a) {
            for (const auto& alpha : enumerate_multi_indices(l, a)) {
                const WaveVector sh = set.shift(alpha);
                const double mag =
                    std::hypot(xi.x + sh.x.real(), xi.y + sh.y.real());
                CHECK(mag <= (r + a * k) * (1.0 + 1e-9));
                CHECK(mag <= (l + a + 1) * k * (1.0 + 1e-9));
            }
        }
    }
}

TEST_SUITE_END();
