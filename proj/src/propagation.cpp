#include "wavepack/propagation.hpp"

#include <cmath>
#include <stdexcept>

#include "wavepack/constants.hpp"

namespace wavepack::prop {

namespace {

using core::Dispersion;

void require_spreading_kind(const WavePacket& p, const char* who) {
    if (p.kind == Dispersion::nonrelativistic) {
        throw std::invalid_argument(std::string(who) +
                                    ": defined for relativistic/massless packets only");
    }
}

// Longitudinal axis: P0 direction, or z for a packet at rest (isotropic case,
// where gamma_L = gamma_T and the split is immaterial).
Vec3 axis(const WavePacket& p) {
    const double pm = norm(p.P0);
    if (pm == 0.0) return {0.0, 0.0, 1.0};
    return p.P0 / pm;
}

} // namespace

SpreadState spread_state(const WavePacket& p, double t) {
    require_spreading_kind(p, "spread_state");
    const double hc = constants().hbar_c_mev_fm;
    const double E = core::energy(p);
    const double dt = t - p.T0;
    SpreadState s;
    s.gamma_T = hc * std::abs(dt) / E;
    s.gamma_L = s.gamma_T * (p.mass * p.mass) / (E * E);
    s.center = p.X0 + p.P0 * (dt / E);
    s.phase0 = -p.mass * p.mass * dt / (E * hc);
    s.w_L = std::sqrt(p.sigma + s.gamma_L * s.gamma_L / p.sigma);
    s.w_T = std::sqrt(p.sigma + s.gamma_T * s.gamma_T / p.sigma);
    return s;
}

std::pair<double, double> spread_velocities(const WavePacket& p) {
    require_spreading_kind(p, "spread_velocities");
    const double hc = constants().hbar_c_mev_fm;
    const double E = core::energy(p);
    const double rs = std::sqrt(p.sigma);
    if (p.kind == Dispersion::massless) {
        return {0.0, std::sqrt(2.0 / p.sigma) * hc / E};
    }
    return {hc * p.mass * p.mass / (E * E * E * rs), hc / (E * rs)};
}

Vec3 stationary_momentum(const Vec3& x, const WavePacket& p, double t) {
    if (p.kind != Dispersion::relativistic || !(p.mass > 0.0)) {
        throw std::invalid_argument("stationary_momentum: relativistic massive packets only");
    }
    const Vec3 r = x - p.X0;
    const double dt = t - p.T0;
    const double s2 = dt * dt - norm2(r);
    if (!(s2 > 0.0)) {
        throw std::domain_error("stationary_momentum: (x, t) is spacelike from (X0, T0)");
    }
    return r * (p.mass / std::sqrt(s2));
}

bool far_field_valid(const WavePacket& p, double t) {
    return spread_state(p, t).gamma_T >= 3.0 * p.sigma;
}

cdouble evaluate_far_field(const WavePacket& p, const Vec3& x, double t) {
    require_spreading_kind(p, "evaluate_far_field");
    const double hc = constants().hbar_c_mev_fm;
    const SpreadState s = spread_state(p, t);
    const double dt = t - p.T0;
    const Vec3 dir = axis(p);
    const Vec3 r = x - s.center;
    const double rL = dot(r, dir);
    const double rT2 = norm2(r) - rL * rL;
    const double n3 = std::pow(M_PI * p.sigma, -0.75);

    const cdouble aT = 1.0 / cdouble(1.0, s.gamma_T / p.sigma);

    if (p.kind == Dispersion::massless) {
        // Rigid longitudinal Gaussian riding at c with its plane-wave phase;
        // transverse spreading only.
        const double carrier = norm(p.P0) * rL / hc;
        const double decay =
            -rL * rL / (2.0 * p.sigma) - p.sigma * rT2 / (2.0 * s.gamma_T * s.gamma_T);
        return n3 * aT * std::exp(decay) * std::polar(1.0, carrier);
    }

    const cdouble aL = std::sqrt(1.0 / cdouble(1.0, s.gamma_L / p.sigma));
    const double decay = -0.5 * p.sigma *
                         (rT2 / (s.gamma_T * s.gamma_T) + rL * rL / (s.gamma_L * s.gamma_L));
    // Proper-time phase along the classical path from (X0, T0); clamped to 0
    // outside the light cone where no stationary trajectory exists.
    const double tau2 = dt * dt - norm2(x - p.X0);
    const double phi =
        tau2 > 0.0 ? -p.mass * std::copysign(std::sqrt(tau2), dt) / hc : 0.0;
    return n3 * aL * aT * std::exp(decay) * std::polar(1.0, phi);
}

} // namespace wavepack::prop
