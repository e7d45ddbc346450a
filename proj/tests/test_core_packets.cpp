#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "oracles.hpp"
#include "wavepack/constants.hpp"
#include "wavepack/core_packets.hpp"

using namespace wavepack;
using core::Dispersion;
using core::WavePacket;
using oracles::cdouble;

namespace {

Dispersion random_kind(std::mt19937& rng, bool allow_massless = true) {
    std::uniform_int_distribution<int> kind_d(0, allow_massless ? 2 : 1);
    const int k = kind_d(rng);
    return k == 0   ? Dispersion::nonrelativistic
           : k == 1 ? Dispersion::relativistic
                    : Dispersion::massless;
}

core::WavePacket random_packet_of(std::mt19937& rng, Dispersion kind) {
    std::uniform_real_distribution<double> sig(0.5, 4.0), pc(-2.0, 2.0), xc(-1.5, 1.5),
        mm(0.5, 5.0), tc(-0.5, 0.5);
    Vec3 P{pc(rng), pc(rng), pc(rng)};
    if (kind == Dispersion::massless && norm(P) < 0.1) P.z += 1.0;
    const double mass = kind == Dispersion::massless ? 0.0 : mm(rng);
    return core::make_packet(P, {xc(rng), xc(rng), xc(rng)}, tc(rng), sig(rng), mass, kind);
}

core::WavePacket random_packet(std::mt19937& rng, bool allow_massless = true) {
    return random_packet_of(rng, random_kind(rng, allow_massless));
}

// Overlaps are defined amplitude-by-amplitude in one dispersion family, so every
// random pair below shares a kind; the mixed-kind rejection has its own test.
std::pair<core::WavePacket, core::WavePacket> random_pair(std::mt19937& rng) {
    const Dispersion kind = random_kind(rng);
    auto a = random_packet_of(rng, kind);
    auto b = random_packet_of(rng, kind);
    return {a, b};
}

} // namespace

TEST_CASE("closed-form overlap matches direct quadrature of the wave functions") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> td(-2.0, 2.0);
    for (int i = 0; i < 40; ++i) {
        const auto [p1, p2] = random_pair(rng);
        const double t = td(rng);
        const cdouble closed = core::overlap(p1, p2, t).amplitude;
        const cdouble direct = oracles::overlap_amplitude(p1, p2, t);
        CAPTURE(i);
        REQUIRE(std::abs(closed - direct) <= 1e-6 * std::abs(direct));
    }
}

TEST_CASE("quadrature integrand equals the product of module wave functions") {
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> xd(-4.0, 4.0), td(-2.0, 2.0);
    for (int i = 0; i < 10; ++i) {
        const auto p1 = random_packet(rng);
        const auto p2 = random_packet(rng);
        std::vector<Vec3> samples;
        for (int j = 0; j < 8; ++j) samples.push_back({xd(rng), xd(rng), xd(rng)});
        REQUIRE(oracles::integrand_mismatch(p1, p2, td(rng), samples) <= 1e-12);
    }
}

TEST_CASE("self-overlap stays exactly normalized at every time") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> td(-50.0, 50.0);
    for (int i = 0; i < 25; ++i) {
        const auto p = random_packet(rng);
        for (int j = 0; j < 5; ++j) {
            const auto res = core::overlap(p, p, td(rng));
            REQUIRE(std::abs(res.probability - 1.0) <= 1e-12);
            REQUIRE(std::abs(res.bound - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("probability reaches 1 only for equal widths, momenta, and centers") {
    const auto base = core::make_packet({1.0, -0.5, 2.0}, {0.3, 0.0, -0.2}, 0.0, 1.7, 3.0,
                                        Dispersion::relativistic);
    const double t = 0.8;

    SUBCASE("equal packets saturate") {
        const auto res = core::overlap(base, base, t);
        CHECK(std::abs(res.probability - 1.0) <= 1e-12);
    }
    SUBCASE("same trajectory reached from a different reference time still saturates") {
        // Same physical packet, parameterized with X0 stated at T0 = 1.
        auto moved = base;
        moved.T0 = 1.0;
        moved.X0 = base.X0 + core::velocity(base) * (moved.T0 - base.T0);
        const auto res = core::overlap(base, moved, t);
        CHECK(std::abs(res.probability - 1.0) <= 1e-10);
    }
    SUBCASE("width mismatch caps the probability at the bound") {
        auto other = base;
        other.sigma = 2.9;
        const auto res = core::overlap(base, other, t);
        const double s1 = base.sigma, s2 = other.sigma;
        const double expect = std::pow(2.0 * std::sqrt(s1 * s2) / (s1 + s2), 3.0);
        CHECK(std::abs(res.bound - expect) <= 1e-12);
        CHECK(std::abs(res.probability - expect) <= 1e-12); // P, X still equal
        CHECK(res.bound < 1.0);
    }
    SUBCASE("momentum mismatch strictly below the bound") {
        auto other = base;
        other.P0.x += 0.7;
        const auto res = core::overlap(base, other, t);
        CHECK(res.probability < res.bound);
    }
    SUBCASE("center mismatch strictly below the bound") {
        auto other = base;
        other.X0.y += 0.9;
        const auto res = core::overlap(base, other, t);
        CHECK(res.probability < res.bound);
    }
}

TEST_CASE("probability, bound, and phase are consistent with the amplitude") {
    std::mt19937 rng(14);
    for (int i = 0; i < 10; ++i) {
        const auto [p1, p2] = random_pair(rng);
        const auto res = core::overlap(p1, p2, 0.4);
        CHECK(std::abs(res.probability - std::norm(res.amplitude)) <= 1e-15);
        CHECK(std::abs(res.phase - std::arg(res.amplitude)) <= 1e-15);
        CHECK(res.probability <= res.bound * (1.0 + 1e-12));
    }
}

TEST_CASE("matrix element with zero spectators is the overlap, bit for bit") {
    std::mt19937 rng(15);
    for (int i = 0; i < 10; ++i) {
        const auto [p1, p2] = random_pair(rng);
        const double t = 0.3 * i - 1.0;
        const cdouble m = core::appendix_matrix_element(p1, p2, {}, {}, t);
        const cdouble o = core::overlap(p1, p2, t).amplitude;
        CHECK(m.real() == o.real());
        CHECK(m.imag() == o.imag());
    }
}

TEST_CASE("matrix element with spectators matches direct quadrature") {
    std::mt19937 rng(16);
    std::uniform_real_distribution<double> qd(-1.5, 1.5), ed(0.5, 3.0), td(-1.0, 1.0);
    std::uniform_int_distribution<int> nd(1, 3);
    for (int i = 0; i < 8; ++i) {
        const auto [p1, p2] = random_pair(rng);
        std::vector<Vec3> qs;
        std::vector<double> es;
        for (int j = 0, n = nd(rng); j < n; ++j) {
            qs.push_back({qd(rng), qd(rng), qd(rng)});
            es.push_back(ed(rng));
        }
        const double t = td(rng);
        const cdouble closed = core::appendix_matrix_element(p1, p2, qs, es, t);
        const cdouble direct = oracles::matrix_element(p1, p2, qs, es, t);
        CAPTURE(i);
        REQUIRE(std::abs(closed - direct) <= 1e-6 * std::abs(direct));
    }
}

TEST_CASE("matrix element is unimodular at the balanced configuration") {
    const auto p = core::make_packet({0.0, 0.0, 2.0}, {0.1, 0.2, 0.3}, 0.0, 1.3, 2.0,
                                     Dispersion::relativistic);
    const Vec3 q{0.7, -0.4, 0.2};
    const cdouble m =
        core::appendix_matrix_element(p, p, {q, -q}, {1.0, 2.5}, 0.9);
    CHECK(std::abs(std::abs(m) - 1.0) <= 1e-12);
}

TEST_CASE("overlap and matrix element reject mixed dispersion kinds") {
    const auto rel = core::make_packet({0, 0, 1}, {}, 0.0, 1.0, 2.0, Dispersion::relativistic);
    const auto nr = core::make_packet({0, 0, 1}, {}, 0.0, 1.0, 2.0, Dispersion::nonrelativistic);
    const auto ml = core::make_packet({0, 0, 1}, {}, 0.0, 1.0, 0.0, Dispersion::massless);
    CHECK_THROWS_AS(core::overlap(rel, nr, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(core::overlap(rel, ml, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(core::overlap(nr, ml, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(core::appendix_matrix_element(rel, ml, {}, {}, 0.0), std::invalid_argument);
}

TEST_CASE("packet construction validates its domain") {
    CHECK_THROWS_AS(core::make_packet({0, 0, 1}, {}, 0.0, -1.0, 1.0,
                                      Dispersion::relativistic),
                    std::invalid_argument);
    CHECK_THROWS_AS(core::make_packet({0, 0, 1}, {}, 0.0, 1.0, 0.0,
                                      Dispersion::relativistic),
                    std::invalid_argument);
    CHECK_THROWS_AS(core::make_packet({0, 0, 1}, {}, 0.0, 1.0, 0.0,
                                      Dispersion::nonrelativistic),
                    std::invalid_argument);
    CHECK_THROWS_AS(core::make_packet({0, 0, 1}, {}, 0.0, 1.0, 1.0,
                                      Dispersion::massless),
                    std::invalid_argument);
    CHECK_THROWS_AS(core::make_packet({0, 0, 0}, {}, 0.0, 1.0, 0.0,
                                      Dispersion::massless),
                    std::invalid_argument);
}

TEST_CASE("dispersion relations and group velocities") {
    // 5-12-13 triangle: |p| = 5, m = 12, E = 13 exactly.
    const auto rel = core::make_packet({3.0, 4.0, 0.0}, {}, 0.0, 1.0, 12.0,
                                       Dispersion::relativistic);
    CHECK(core::energy(rel) == doctest::Approx(13.0).epsilon(1e-15));
    const Vec3 v = core::velocity(rel);
    CHECK(v.x == doctest::Approx(3.0 / 13.0).epsilon(1e-15));
    CHECK(v.y == doctest::Approx(4.0 / 13.0).epsilon(1e-15));

    const auto nr = core::make_packet({3.0, 4.0, 0.0}, {}, 0.0, 1.0, 2.0,
                                      Dispersion::nonrelativistic);
    CHECK(core::energy(nr) == doctest::Approx(25.0 / 4.0).epsilon(1e-15));
    CHECK(core::velocity(nr).x == doctest::Approx(1.5).epsilon(1e-15));

    const auto ml = core::make_packet({3.0, 4.0, 0.0}, {}, 0.0, 1.0, 0.0,
                                      Dispersion::massless);
    CHECK(core::energy(ml) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(norm(core::velocity(ml)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("instantaneous acceleration conserves energy and rescales the width") {
    const auto p = core::make_packet({0.0, 0.0, 100.0}, {}, 0.0, 2.0, 938.272,
                                     Dispersion::relativistic);
    const double V0 = 500.0;
    const auto q = core::accelerate(p, V0);
    CHECK(core::energy(q) == doctest::Approx(core::energy(p) + V0).epsilon(1e-14));
    // Direction preserved.
    CHECK(q.P0.x == 0.0);
    CHECK(q.P0.y == 0.0);
    CHECK(q.P0.z > 0.0);
    // sigma scales by (v'/v)^2.
    const double v0 = norm(core::velocity(p));
    const double v1 = norm(core::velocity(q));
    CHECK(q.sigma == doctest::Approx(p.sigma * (v1 / v0) * (v1 / v0)).epsilon(1e-13));

    // Deceleration below reach is rejected.
    const auto slow = core::make_packet({0.0, 0.0, 10.0}, {}, 0.0, 1.0, 938.272,
                                        Dispersion::nonrelativistic);
    CHECK_THROWS_AS(core::accelerate(slow, -1.0), std::domain_error);
}

TEST_CASE("decay products inherit the parent size scaled by the velocity ratio") {
    CHECK(core::intermediate_size(2.0, 0.5, 0.25) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(core::intermediate_size(1e-14, 1.0, 1.0) == doctest::Approx(1e-14).epsilon(1e-15));
}

TEST_CASE("co-moving phase advances at the rest-frame frequency") {
    const auto rel = core::make_packet({3.0, 4.0, 0.0}, {}, 0.0, 1.0, 12.0,
                                       Dispersion::relativistic);
    const double hbarc = constants().hbar_c_mev_fm;
    // E - P.v = E - P^2/E = m^2/E.
    const double expect = -(12.0 * 12.0 / 13.0) * 2.0 / hbarc;
    CHECK(core::moving_frame_phase(rel, 2.0) == doctest::Approx(expect).epsilon(1e-13));

    const auto ml = core::make_packet({3.0, 4.0, 0.0}, {}, 0.0, 1.0, 0.0,
                                      Dispersion::massless);
    CHECK(core::moving_frame_phase(ml, 2.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("near-field window follows the stated horizon formula") {
    const auto p = core::make_packet({0.0, 0.0, 5.0}, {}, 0.0, 2.0, 12.0,
                                     Dispersion::relativistic);
    const double hbarc = constants().hbar_c_mev_fm;
    const double E = 13.0;
    const double expect = 0.1 * 2.0 * E / (hbarc * std::max(1.0, 144.0 / 169.0));
    CHECK(core::near_field_window(p) == doctest::Approx(expect).epsilon(1e-13));
}
