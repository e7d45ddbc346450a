#pragma once
// Independent quadrature oracles for the closed-form Gaussian integrals.
// Everything here is assembled from the packet definition alone — envelope
// centers, plane-wave phases, per-axis factorization — plus adaptive
// Gauss-Kronrod quadrature. None of the closed-form overlap algebra enters,
// so agreement is a real check, not a tautology.
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "wavepack/constants.hpp"
#include "wavepack/core_packets.hpp"
#include "wavepack/vec3.hpp"

namespace oracles {

using cdouble = std::complex<double>;
namespace core = wavepack::core;
using wavepack::Vec3;

// 15-point Kronrod rule with the embedded 7-point Gauss rule (QUADPACK dqk15
// constants). Positive abscissae; even indices are Kronrod-only points.
inline constexpr std::array<double, 8> kXgk = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
inline constexpr std::array<double, 8> kWgk = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
inline constexpr std::array<double, 4> kWg = {0.1294849661688697, 0.2797053914892767,
                                              0.3818300505051189, 0.4179591836734694};

template <typename F>
cdouble gk15(const F& f, double a, double b, double& err) {
    const double h = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    cdouble ik = 0.0, ig = 0.0;
    for (int i = 0; i < 7; ++i) {
        const cdouble v = f(mid - h * kXgk[i]) + f(mid + h * kXgk[i]);
        ik += kWgk[i] * v;
        if (i % 2 == 1) ig += kWg[i / 2] * v;
    }
    const cdouble center = f(mid);
    ik += kWgk[7] * center;
    ig += kWg[3] * center;
    ik *= h;
    ig *= h;
    err = std::abs(ik - ig);
    return ik;
}

template <typename F>
cdouble adaptive_gk(const F& f, double a, double b, double abs_tol, int depth = 0) {
    double err = 0.0;
    const cdouble ik = gk15(f, a, b, err);
    if (err <= abs_tol || depth >= 40) return ik;
    const double mid = 0.5 * (a + b);
    return adaptive_gk(f, a, mid, 0.5 * abs_tol, depth + 1) +
           adaptive_gk(f, mid, b, 0.5 * abs_tol, depth + 1);
}

// Integrate with a relative target: one rough whole-interval pass sets the
// absolute budget.
template <typename F>
cdouble integrate(const F& f, double a, double b, double rel_tol) {
    double err = 0.0;
    const cdouble rough = gk15(f, a, b, err);
    const double scale = std::max(std::abs(rough), 1e-300);
    return adaptive_gk(f, a, b, rel_tol * scale);
}

inline double group_velocity_component(const core::WavePacket& p, double p_i) {
    const double pn = wavepack::norm(p.P0);
    switch (p.kind) {
    case core::Dispersion::nonrelativistic:
        return p_i / p.mass;
    case core::Dispersion::relativistic:
        return p_i / std::sqrt(pn * pn + p.mass * p.mass);
    case core::Dispersion::massless:
        return p_i / pn;
    }
    throw std::logic_error("bad dispersion");
}

inline double oracle_energy(const core::WavePacket& p) {
    const double pn = wavepack::norm(p.P0);
    switch (p.kind) {
    case core::Dispersion::nonrelativistic:
        return pn * pn / (2.0 * p.mass);
    case core::Dispersion::relativistic:
        return std::sqrt(pn * pn + p.mass * p.mass);
    case core::Dispersion::massless:
        return pn;
    }
    throw std::logic_error("bad dispersion");
}

// integral d^3x exp(-i sum_l p_l.x/hbar c) psi2^*(x,t) psi1(x,t) by three
// 1-D adaptive quadratures: the integrand factorizes per Cartesian axis
// because both envelopes are isotropic Gaussians and every phase is linear
// in x. The time-only phases (packet energies, spectator energies) multiply
// as a constant.
inline cdouble matrix_element(const core::WavePacket& p1, const core::WavePacket& p2,
                              const std::vector<Vec3>& spectator_momenta,
                              const std::vector<double>& spectator_energies, double t,
                              double rel_tol = 1e-9) {
    const double hbarc = wavepack::constants().hbar_c_mev_fm;
    const double dt1 = t - p1.T0;
    const double dt2 = t - p2.T0;

    Vec3 p_spect{0.0, 0.0, 0.0};
    double e_spect = 0.0;
    for (const auto& q : spectator_momenta) p_spect = p_spect + q;
    for (double e : spectator_energies) e_spect += e;

    // x-independent factor: normalizations and time/center phases.
    const double norm1 = std::pow(M_PI * p1.sigma, -0.75);
    const double norm2 = std::pow(M_PI * p2.sigma, -0.75);
    const double const_phase =
        (-dot(p1.P0, p1.X0) + dot(p2.P0, p2.X0) - oracle_energy(p1) * dt1 +
         oracle_energy(p2) * dt2 + e_spect * t) /
        hbarc;
    cdouble result = norm1 * norm2 * std::exp(cdouble(0.0, const_phase));

    const double c1[3] = {p1.X0.x + group_velocity_component(p1, p1.P0.x) * dt1,
                          p1.X0.y + group_velocity_component(p1, p1.P0.y) * dt1,
                          p1.X0.z + group_velocity_component(p1, p1.P0.z) * dt1};
    const double c2[3] = {p2.X0.x + group_velocity_component(p2, p2.P0.x) * dt2,
                          p2.X0.y + group_velocity_component(p2, p2.P0.y) * dt2,
                          p2.X0.z + group_velocity_component(p2, p2.P0.z) * dt2};
    const double dp[3] = {p1.P0.x - p2.P0.x - p_spect.x, p1.P0.y - p2.P0.y - p_spect.y,
                          p1.P0.z - p2.P0.z - p_spect.z};

    const double pad = 12.0 * std::sqrt(std::max(p1.sigma, p2.sigma));
    for (int axis = 0; axis < 3; ++axis) {
        const double a = std::min(c1[axis], c2[axis]) - pad;
        const double b = std::max(c1[axis], c2[axis]) + pad;
        const double s1 = p1.sigma, s2 = p2.sigma, k = dp[axis] / hbarc;
        const double ca = c1[axis], cb = c2[axis];
        auto g = [=](double x) {
            const double u = x - ca, w = x - cb;
            return std::exp(cdouble(-0.5 * u * u / s1 - 0.5 * w * w / s2, k * x));
        };
        result *= integrate(g, a, b, rel_tol);
    }
    return result;
}

inline cdouble overlap_amplitude(const core::WavePacket& p1, const core::WavePacket& p2,
                                 double t, double rel_tol = 1e-9) {
    return matrix_element(p1, p2, {}, {}, t, rel_tol);
}

// Pointwise check that the factorized integrand used above equals the product
// of the module's own wave functions; returns the max relative mismatch over
// the supplied sample points.
inline double integrand_mismatch(const core::WavePacket& p1, const core::WavePacket& p2,
                                 double t, const std::vector<Vec3>& samples) {
    const double hbarc = wavepack::constants().hbar_c_mev_fm;
    const double dt1 = t - p1.T0, dt2 = t - p2.T0;
    const double norm1 = std::pow(M_PI * p1.sigma, -0.75);
    const double norm2 = std::pow(M_PI * p2.sigma, -0.75);
    const double const_phase = (-dot(p1.P0, p1.X0) + dot(p2.P0, p2.X0) -
                                oracle_energy(p1) * dt1 + oracle_energy(p2) * dt2) /
                               hbarc;
    const cdouble pref = norm1 * norm2 * std::exp(cdouble(0.0, const_phase));
    const Vec3 v1{group_velocity_component(p1, p1.P0.x), group_velocity_component(p1, p1.P0.y),
                  group_velocity_component(p1, p1.P0.z)};
    const Vec3 v2{group_velocity_component(p2, p2.P0.x), group_velocity_component(p2, p2.P0.y),
                  group_velocity_component(p2, p2.P0.z)};
    const Vec3 cc1 = p1.X0 + v1 * dt1;
    const Vec3 cc2 = p2.X0 + v2 * dt2;
    double worst = 0.0;
    for (const auto& x : samples) {
        const Vec3 u = x - cc1, w = x - cc2;
        const double phase = dot(p1.P0 - p2.P0, x) / hbarc;
        const cdouble mine = pref * std::exp(cdouble(-0.5 * wavepack::norm2(u) / p1.sigma -
                                                         0.5 * wavepack::norm2(w) / p2.sigma,
                                                     phase));
        const cdouble theirs = std::conj(core::evaluate(p2, x, t)) * core::evaluate(p1, x, t);
        const double denom = std::max(std::abs(theirs), 1e-300);
        worst = std::max(worst, std::abs(mine - theirs) / denom);
    }
    return worst;
}

} // namespace oracles
