#pragma once
#include <complex>
#include <vector>

#include "wavepack/vec3.hpp"

namespace wavepack::core {

using cdouble = std::complex<double>;

// Natural units throughout this module: energies and momenta in MeV, lengths
// in fm, times as light-travel distance in fm, sigma in fm^2. The only
// dimensional constant entering any phase is hbar*c.
enum class Dispersion { nonrelativistic, relativistic, massless };

// Gaussian wave packet
//   psi(x,t) = (pi sigma)^(-3/4)
//              * exp(-(x - X0 - v0 (t-T0))^2 / (2 sigma))
//              * exp(i [P0.(x - X0) - E(P0) (t-T0)] / hbar c)
// The envelope translates rigidly at the group velocity; the norm is exactly
// 1 at every t. This form is the near-field (pre-spreading) description; see
// propagation.hpp for the spreading regime and near_field_window() for the
// validity horizon.
struct WavePacket {
    Vec3 P0;            // central momentum, MeV
    Vec3 X0;            // center at t = T0, fm
    double T0 = 0.0;    // reference time, fm
    double sigma = 1.0; // squared spatial width, fm^2
    double mass = 0.0;  // MeV
    Dispersion kind = Dispersion::relativistic;
};

// Validates: sigma > 0, mass >= 0, massless => mass == 0 and |P0| > 0,
// massive kinds => mass > 0. Throws std::invalid_argument.
WavePacket make_packet(Vec3 P0, Vec3 X0, double T0, double sigma, double mass,
                       Dispersion kind);

// E(p): p^2/2m (nonrelativistic, kinetic), sqrt(p^2 + m^2), or |p|.
double energy(Dispersion kind, double mass, double p);
double energy(const WavePacket& p);

// Group velocity dE/dP in units of c: P/m, P/E, or the unit vector P-hat.
Vec3 velocity(const WavePacket& p);

cdouble evaluate(const WavePacket& p, const Vec3& x, double t);

// Time horizon (fm) within which the rigid-envelope form is accurate:
//   |t - T0| < 0.1 sigma E / (hbar c max(1, m^2/E^2)).
// Beyond it the packet has begun to spread and the far-field form applies.
double near_field_window(const WavePacket& p);

// <2|1>(t) = integral d^3x psi2^*(x,t) psi1(x,t), in closed form:
//   amplitude = (2 sqrt(s1 s2)/(s1+s2))^(3/2)
//             * exp(-s_s (P1-P2)^2 / (2 (hbar c)^2) - dX(t)^2 / (2 (s1+s2)))
//             * exp(i phase)
// with s_s = s1 s2/(s1+s2), dX(t) the center separation at t, and the phase
// assembled from the plane-wave boundary terms of both packets (see .cpp).
// probability = |amplitude|^2 <= bound = (2 sqrt(s1 s2)/(s1+s2))^3, with
// equality iff P1 = P2 and dX(t) = 0; bound = 1 iff s1 = s2.
struct OverlapResult {
    cdouble amplitude;
    double probability;
    double bound;
    double phase; // arg(amplitude), rad
};
OverlapResult overlap(const WavePacket& p1, const WavePacket& p2, double t);

// Transition matrix element with extra plane-wave legs ("spectators"):
//   M = integral d^3x exp(-i sum_l p_l.x / hbar c + i sum_l E_l t / hbar c)
//       psi2^*(x,t) psi1(x,t).
// Same Gaussian integral as overlap() with the momentum-Gaussian argument
// shifted to (P1 - P2 - sum_l p_l); with zero spectators this IS overlap()
// (identical code path, bit-for-bit). |M| = 1 exactly when dX(t) = 0,
// P1 = P2, s1 = s2 and sum_l p_l = 0.
cdouble appendix_matrix_element(const WavePacket& p1, const WavePacket& p2,
                                const std::vector<Vec3>& spectator_momenta,
                                const std::vector<double>& spectator_energies,
                                double t);

// Instantaneous kick by a potential step: direction preserved, |P| resolved
// from E(P') = E(P) + V0, and sigma rescaled by (v'/v)^2 -- the longitudinal
// size of a bunch crossing a gap in time delta x / v changes by the velocity
// ratio, and sigma tracks the squared width. Throws std::domain_error if the
// final energy is kinematically unreachable.
WavePacket accelerate(const WavePacket& p, double V0);

// Size inherited by a decay/emission product: dx_child = dx_parent * v_child/v_parent
// (the child is emitted over the parent's crossing time dx_parent / v_parent).
double intermediate_size(double dx_parent, double v_parent, double v_child);

// Phase accumulated at the moving center over dt (fm):
//   dphi = -(E - P.v) dt / hbar c,
// the rest-frame frequency seen co-moving: m^2/E per unit time for the
// relativistic kind, 0 for massless.
double moving_frame_phase(const WavePacket& p, double dt);

} // namespace wavepack::core
