#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "wavepack/constants.hpp"
#include "wavepack/core_packets.hpp"
#include "wavepack/propagation.hpp"

using namespace wavepack;
using core::Dispersion;
using prop::cdouble;

namespace {

core::WavePacket massive(double pz, double m, double sigma) {
    return core::make_packet({0.0, 0.0, pz}, {0.0, 0.0, 0.0}, 0.0, sigma, m,
                             Dispersion::relativistic);
}

core::WavePacket massless(double pz, double sigma) {
    return core::make_packet({0.0, 0.0, pz}, {0.0, 0.0, 0.0}, 0.0, sigma, 0.0,
                             Dispersion::massless);
}

} // namespace

TEST_CASE("longitudinal spreading is suppressed by exactly m^2/E^2") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> pd(0.5, 50.0), md(0.5, 20.0), sd(0.5, 5.0),
        td(1.0, 1e4);
    for (int i = 0; i < 30; ++i) {
        const auto p = massive(pd(rng), md(rng), sd(rng));
        const auto st = prop::spread_state(p, td(rng));
        const double e = core::energy(p);
        const double expect = p.mass * p.mass / (e * e);
        REQUIRE(std::abs(st.gamma_L / st.gamma_T - expect) <= 1e-12 * expect);
    }
}

TEST_CASE("massless packets never spread longitudinally") {
    const auto p = massless(5.0, 2.0);
    const double w0 = std::sqrt(2.0);
    for (int d = 0; d <= 6; ++d) {
        const auto st = prop::spread_state(p, std::pow(10.0, d));
        CHECK(st.w_L == w0); // exactly sqrt(sigma), every decade
        CHECK(st.gamma_L == 0.0);
        CHECK(st.phase0 == 0.0);
    }
}

TEST_CASE("spreading scales and widths follow the closed forms") {
    const double hbarc = constants().hbar_c_mev_fm;
    const auto p = massive(5.0, 2.0, 3.0);
    const double e = core::energy(p); // sqrt(29)
    const double t = 700.0;
    const auto st = prop::spread_state(p, t);
    CHECK(st.gamma_T == doctest::Approx(hbarc * t / e).epsilon(1e-14));
    CHECK(st.gamma_L == doctest::Approx(hbarc * t * 4.0 / (e * e * e)).epsilon(1e-14));
    CHECK(st.w_T ==
          doctest::Approx(std::sqrt(3.0 + st.gamma_T * st.gamma_T / 3.0)).epsilon(1e-14));
    CHECK(st.w_L ==
          doctest::Approx(std::sqrt(3.0 + st.gamma_L * st.gamma_L / 3.0)).epsilon(1e-14));
    // Center rides the group velocity; negative times mirror.
    CHECK(st.center.z == doctest::Approx(5.0 / e * t).epsilon(1e-14));
    const auto back = prop::spread_state(p, -t);
    CHECK(back.center.z == doctest::Approx(-5.0 / e * t).epsilon(1e-14));
    CHECK(back.gamma_T == st.gamma_T); // |t - T0|
    // Proper-time phase at the center: -m^2 (t - T0) / (E hbar c).
    CHECK(st.phase0 == doctest::Approx(-4.0 * t / (e * hbarc)).epsilon(1e-13));
}

TEST_CASE("transverse spreading velocity falls as one over the initial width") {
    const double hbarc = constants().hbar_c_mev_fm;
    SUBCASE("massless: v_T = sqrt(2/sigma) hbar c / E, v_L = 0") {
        for (double sigma : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
            const auto p = massless(5.0, sigma);
            const auto [vl, vt] = prop::spread_velocities(p);
            CHECK(vl == 0.0);
            CHECK(vt == doctest::Approx(std::sqrt(2.0 / sigma) * hbarc / 5.0).epsilon(1e-14));
        }
        // Scaling check across the grid: vt * sqrt(sigma) is constant.
        const auto [vl1, vt1] = prop::spread_velocities(massless(5.0, 1.0));
        const auto [vl4, vt4] = prop::spread_velocities(massless(5.0, 4.0));
        CHECK(vt1 / vt4 == doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("massive rates and the rest-frame collapse") {
        const auto p = massive(5.0, 2.0, 3.0);
        const double e = core::energy(p);
        const auto [vl, vt] = prop::spread_velocities(p);
        CHECK(vl == doctest::Approx(hbarc * 4.0 / (e * e * e * std::sqrt(3.0))).epsilon(1e-14));
        CHECK(vt == doctest::Approx(hbarc / (e * std::sqrt(3.0))).epsilon(1e-14));
        // At rest both rates equal hbar c / (m sqrt(sigma)).
        const auto rest = massive(0.0, 2.0, 3.0);
        const auto [rl, rt] = prop::spread_velocities(rest);
        CHECK(rl == doctest::Approx(hbarc / (2.0 * std::sqrt(3.0))).epsilon(1e-14));
        CHECK(rt == doctest::Approx(rl).epsilon(1e-15));
    }
}

TEST_CASE("far-field validity switches at gamma_T = 3 sigma") {
    const double hbarc = constants().hbar_c_mev_fm;
    const auto p = massive(5.0, 2.0, 3.0);
    const double e = core::energy(p);
    const double t_star = 3.0 * 3.0 * e / hbarc; // gamma_T(t*) = 3 sigma
    CHECK_FALSE(prop::far_field_valid(p, 0.99 * t_star));
    CHECK(prop::far_field_valid(p, 1.01 * t_star));
}

TEST_CASE("asymptotic width converges onto the exact width past the horizon") {
    // At the validity edge gamma_T = 3 sigma the asymptotic width gamma/sqrt(sigma)
    // sits 5.1% below the exact sqrt(sigma + gamma^2/sigma); by gamma = 10 sigma
    // the gap is 0.5%.
    const auto p = massive(5.0, 2.0, 2.0);
    const double e = core::energy(p);
    const double hbarc = constants().hbar_c_mev_fm;
    auto gap_at = [&](double gamma_over_sigma) {
        const double t = gamma_over_sigma * 2.0 * e / hbarc;
        const auto st = prop::spread_state(p, t);
        const double asym = st.gamma_T / std::sqrt(2.0);
        return std::abs(1.0 - asym / st.w_T);
    };
    CHECK(gap_at(3.0) <= 0.052);
    CHECK(gap_at(10.0) <= 0.005);
    CHECK(gap_at(10.0) < gap_at(3.0));
    CHECK(gap_at(100.0) < gap_at(10.0));
}

TEST_CASE("the nonrelativistic kind has no far-field form here") {
    const auto p = core::make_packet({0.0, 0.0, 5.0}, {}, 0.0, 1.0, 2.0,
                                     Dispersion::nonrelativistic);
    CHECK_THROWS_AS(prop::spread_state(p, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(prop::spread_velocities(p), std::invalid_argument);
}

TEST_CASE("stationary momentum is the classical timelike momentum") {
    const auto p = massive(5.0, 2.0, 1.0);
    // x = 3 at t = 5: sqrt(25 - 9) = 4, P = m x / 4.
    const Vec3 px = prop::stationary_momentum({3.0, 0.0, 0.0}, p, 5.0);
    CHECK(px.x == doctest::Approx(2.0 * 3.0 / 4.0).epsilon(1e-14));
    CHECK(px.y == 0.0);
    // Spacelike separation has no classical trajectory.
    CHECK_THROWS_AS(prop::stationary_momentum({6.0, 0.0, 0.0}, p, 5.0), std::domain_error);
}

TEST_CASE("instantaneous frequency at a fixed point is E(P_X)/hbar c") {
    const double hbarc = constants().hbar_c_mev_fm;
    auto inst_freq = [&](const core::WavePacket& p, const Vec3& x, double t) {
        const double h = 0.05;
        const cdouble a = prop::evaluate_far_field(p, x, t + h);
        const cdouble b = prop::evaluate_far_field(p, x, t - h);
        return std::arg(a / b) / (2.0 * h);
    };
    SUBCASE("massive: the local classical energy sets the clock") {
        const auto p = massive(5.0, 2.0, 2.0);
        const double t = 2000.0;
        const Vec3 x{0.0, 0.0, 1800.0};
        const Vec3 px = prop::stationary_momentum(x, p, t);
        const double e_x = std::sqrt(norm2(px) + p.mass * p.mass);
        CHECK(inst_freq(p, x, t) == doctest::Approx(-e_x / hbarc).epsilon(1e-3));
    }
    SUBCASE("massless: the carrier frequency E/hbar c survives unchanged") {
        const auto p = massless(5.0, 2.0);
        const double t = 2000.0;
        const Vec3 x{0.0, 0.0, 1998.0};
        CHECK(inst_freq(p, x, t) == doctest::Approx(-5.0 / hbarc).epsilon(1e-3));
    }
}

TEST_CASE("massless far field keeps the rigid longitudinal profile and carrier") {
    const double hbarc = constants().hbar_c_mev_fm;
    const auto p = massless(5.0, 2.0);
    const double t = 5000.0; // deep far field; center at z = t
    const double z1 = t - 1.0, z2 = t - 2.5;
    const cdouble a = prop::evaluate_far_field(p, {0.0, 0.0, z1}, t);
    const cdouble b = prop::evaluate_far_field(p, {0.0, 0.0, z2}, t);
    const double dxl1 = z1 - t, dxl2 = z2 - t;
    // Envelope ratio: rigid Gaussian of unchanged width sqrt(sigma).
    const double expect_mag =
        std::exp(-(dxl1 * dxl1 - dxl2 * dxl2) / (2.0 * 2.0));
    CHECK(std::abs(a) / std::abs(b) == doctest::Approx(expect_mag).epsilon(1e-12));
    // Carrier: phase difference |P0| (dxl1 - dxl2) / hbar c.
    const double dphi = std::arg(a / b);
    const double expect_phi =
        std::remainder(5.0 * (dxl1 - dxl2) / hbarc, 2.0 * M_PI);
    CHECK(dphi == doctest::Approx(expect_phi).epsilon(1e-10));
}
