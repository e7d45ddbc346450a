#pragma once
#include <complex>
#include <utility>

#include "wavepack/core_packets.hpp"
#include "wavepack/vec3.hpp"

namespace wavepack::prop {

using core::WavePacket;
using cdouble = std::complex<double>;

// Far-field (spreading) regime of a relativistic or massless Gaussian packet.
// The spreading scales, both in fm^2,
//   gamma_T = hbar c |t - T0| / E,        gamma_L = hbar c m^2 |t - T0| / E^3,
// obey gamma_L / gamma_T = m^2 / E^2 exactly: longitudinal spreading is
// suppressed by the Lorentz factor squared and vanishes for massless packets.
// Effective widths combine the initial width with the spreading scale,
//   w = sqrt(sigma + gamma^2 / sigma),
// the exact free-Gaussian width evolution. phase0 is the proper-time phase
// at the packet center, -m^2 (t - T0) / (E hbar c); zero for massless.
struct SpreadState {
    double gamma_L = 0.0; // fm^2
    double gamma_T = 0.0; // fm^2
    Vec3 center;          // X0 + (t - T0) P0 / E, fm
    double phase0 = 0.0;  // rad
    double w_L = 0.0;     // fm
    double w_T = 0.0;     // fm
};

// Relativistic / massless kinds only (the nonrelativistic kind has no
// far-field form here); throws std::invalid_argument otherwise.
SpreadState spread_state(const WavePacket& p, double t);

// Asymptotic growth rates d(gamma/sqrt(sigma))/dt of the effective widths, in
// units of c: massless {0, sqrt(2/sigma) hbar c / E}; massive
// {hbar c m^2/(E^3 sqrt(sigma)), hbar c/(E sqrt(sigma))}, which collapse to
// hbar c/(m sqrt(sigma)) in both directions at rest. The massless transverse
// rate carries the source's sqrt(2); the massive rates are the literal
// derivatives, a sqrt(2) below it in the m -> 0 limit.
std::pair<double, double> spread_velocities(const WavePacket& p);

// Momentum of stationary phase at (x, t): the classical momentum that carries
// a particle of mass m from X0 at T0 to x at t along a timelike path,
//   P_X = m (x - X0) / sqrt((t-T0)^2 - |x-X0|^2).
// Relativistic massive packets only; throws std::domain_error for spacelike
// separation (no classical trajectory reaches x).
Vec3 stationary_momentum(const Vec3& x, const WavePacket& p, double t);

// The far-field form is trustworthy once the spreading dominates the initial
// width; gamma_T >= 3 sigma is the working criterion.
bool far_field_valid(const WavePacket& p, double t);

// Far-field amplitude. Massive (relativistic kind):
//   psi = N3 (1 + i gamma_L/sigma)^(-1/2) (1 + i gamma_T/sigma)^(-1)
//         exp(-sigma/2 (dxT^2/gamma_T^2 + dxL^2/gamma_L^2)) exp(i phi0),
// with dxL, dxT the offsets from the center along/across P0 and phi0 the
// proper-time phase -m sqrt((t-T0)^2 - |x-X0|^2)/hbar c (0 past the light
// cone). Instantaneous frequency at fixed x is E(P_X)/hbar c.
// Massless: no longitudinal spreading; the longitudinal profile stays the
// rigid near-field Gaussian exp(-dxL^2/(2 sigma)) carrying the plane-wave
// phase |P0| dxL / hbar c (so the frequency at fixed x is E/hbar c), while
// the transverse factor spreads as above with gamma_T = hbar c |t-T0|/E.
cdouble evaluate_far_field(const WavePacket& p, const Vec3& x, double t);

} // namespace wavepack::prop
