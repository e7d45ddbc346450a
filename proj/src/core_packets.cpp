#include "wavepack/core_packets.hpp"

#include <cmath>
#include <stdexcept>

#include "wavepack/constants.hpp"

namespace wavepack::core {

namespace {

const char* kind_name(Dispersion k) {
    switch (k) {
        case Dispersion::nonrelativistic: return "nonrelativistic";
        case Dispersion::relativistic: return "relativistic";
        case Dispersion::massless: return "massless";
    }
    return "?";
}

void require_same_kind(const WavePacket& a, const WavePacket& b) {
    if (a.kind != b.kind) {
        throw std::invalid_argument(std::string("overlap: mixed dispersion kinds (") +
                                    kind_name(a.kind) + " vs " + kind_name(b.kind) + ")");
    }
}

// Shared Gaussian integral behind overlap() and appendix_matrix_element().
// Q = sum of spectator momenta (MeV), EQ = sum of spectator energies (MeV).
cdouble gaussian_overlap_core(const WavePacket& p1, const WavePacket& p2,
                              const Vec3& Q, double EQ, double t) {
    require_same_kind(p1, p2);
    const double hc = constants().hbar_c_mev_fm;
    const double s1 = p1.sigma, s2 = p2.sigma;
    const double ssum = s1 + s2;
    const double ss = s1 * s2 / ssum;

    const double E1 = energy(p1), E2 = energy(p2);
    const double dt1 = t - p1.T0, dt2 = t - p2.T0;
    const Vec3 X1t = p1.X0 + velocity(p1) * dt1;
    const Vec3 X2t = p2.X0 + velocity(p2) * dt2;
    const Vec3 dX = X1t - X2t;
    const Vec3 Xbar = (X1t * s2 + X2t * s1) / ssum;
    const Vec3 K = p1.P0 - p2.P0 - Q;

    const double prefactor = std::pow(4.0 * s1 * s2 / (ssum * ssum), 0.75);
    const double damping =
        -ss * norm2(K) / (2.0 * hc * hc) - norm2(dX) / (2.0 * ssum);
    // Plane-wave boundary terms of both packets plus the spectator phase; the
    // x-linear part integrates to K.Xbar.
    const double phase = (dot(K, Xbar) - dot(p1.P0, p1.X0) + dot(p2.P0, p2.X0) -
                          E1 * dt1 + E2 * dt2 + EQ * t) /
                         hc;
    return prefactor * std::exp(damping) * std::polar(1.0, phase);
}

} // namespace

WavePacket make_packet(Vec3 P0, Vec3 X0, double T0, double sigma, double mass,
                       Dispersion kind) {
    if (!(sigma > 0.0)) throw std::invalid_argument("make_packet: sigma must be > 0 fm^2");
    if (mass < 0.0) throw std::invalid_argument("make_packet: mass must be >= 0");
    if (kind == Dispersion::massless) {
        if (mass != 0.0) throw std::invalid_argument("make_packet: massless kind requires mass == 0");
        if (norm2(P0) == 0.0) {
            throw std::invalid_argument("make_packet: massless packet needs |P0| > 0");
        }
    } else if (!(mass > 0.0)) {
        throw std::invalid_argument(std::string("make_packet: ") + kind_name(kind) +
                                    " kind requires mass > 0");
    }
    return WavePacket{P0, X0, T0, sigma, mass, kind};
}

double energy(Dispersion kind, double mass, double p) {
    switch (kind) {
        case Dispersion::nonrelativistic: return p * p / (2.0 * mass);
        case Dispersion::relativistic: return std::sqrt(p * p + mass * mass);
        case Dispersion::massless: return std::abs(p);
    }
    return 0.0;
}

double energy(const WavePacket& p) { return energy(p.kind, p.mass, norm(p.P0)); }

Vec3 velocity(const WavePacket& p) {
    switch (p.kind) {
        case Dispersion::nonrelativistic: return p.P0 / p.mass;
        case Dispersion::relativistic: return p.P0 / energy(p);
        case Dispersion::massless: {
            const double pm = norm(p.P0);
            if (pm == 0.0) throw std::invalid_argument("velocity: massless packet with P0 = 0");
            return p.P0 / pm;
        }
    }
    return {};
}

cdouble evaluate(const WavePacket& p, const Vec3& x, double t) {
    const double hc = constants().hbar_c_mev_fm;
    const double dt = t - p.T0;
    const Vec3 r = x - p.X0 - velocity(p) * dt;
    const double n3 = std::pow(M_PI * p.sigma, -0.75);
    const double phase = (dot(p.P0, x - p.X0) - energy(p) * dt) / hc;
    return n3 * std::exp(-norm2(r) / (2.0 * p.sigma)) * std::polar(1.0, phase);
}

double near_field_window(const WavePacket& p) {
    const double E = energy(p);
    if (!(E > 0.0)) return 0.0; // packet at rest in the kinetic convention never dephases
    const double rel = std::max(1.0, p.mass * p.mass / (E * E));
    return 0.1 * p.sigma * E / (constants().hbar_c_mev_fm * rel);
}

OverlapResult overlap(const WavePacket& p1, const WavePacket& p2, double t) {
    const cdouble amp = gaussian_overlap_core(p1, p2, Vec3{}, 0.0, t);
    const double ssum = p1.sigma + p2.sigma;
    const double b = 2.0 * std::sqrt(p1.sigma * p2.sigma) / ssum;
    return OverlapResult{amp, std::norm(amp), b * b * b, std::arg(amp)};
}

cdouble appendix_matrix_element(const WavePacket& p1, const WavePacket& p2,
                                const std::vector<Vec3>& spectator_momenta,
                                const std::vector<double>& spectator_energies,
                                double t) {
    if (spectator_momenta.size() != spectator_energies.size()) {
        throw std::invalid_argument(
            "appendix_matrix_element: momentum/energy lists differ in length");
    }
    Vec3 Q{};
    double EQ = 0.0;
    for (size_t i = 0; i < spectator_momenta.size(); ++i) {
        Q = Q + spectator_momenta[i];
        EQ += spectator_energies[i];
    }
    return gaussian_overlap_core(p1, p2, Q, EQ, t);
}

WavePacket accelerate(const WavePacket& p, double V0) {
    const double p1 = norm(p.P0);
    if (p1 == 0.0) {
        throw std::invalid_argument("accelerate: direction undefined for a packet at rest");
    }
    const double E2 = energy(p) + V0;
    double p2 = 0.0, vr = 1.0; // vr = v_after / v_before
    switch (p.kind) {
        case Dispersion::nonrelativistic:
            if (!(E2 > 0.0)) throw std::domain_error("accelerate: final kinetic energy <= 0");
            p2 = std::sqrt(2.0 * p.mass * E2);
            vr = p2 / p1; // v = p/m
            break;
        case Dispersion::relativistic:
            if (!(E2 > p.mass)) throw std::domain_error("accelerate: final energy below mass");
            p2 = std::sqrt(E2 * E2 - p.mass * p.mass);
            vr = (p2 / E2) / (p1 / energy(p));
            break;
        case Dispersion::massless:
            if (!(E2 > 0.0)) throw std::domain_error("accelerate: final energy <= 0");
            p2 = E2;
            vr = 1.0;
            break;
    }
    WavePacket out = p;
    out.P0 = p.P0 * (p2 / p1);
    out.sigma = p.sigma * vr * vr;
    return out;
}

double intermediate_size(double dx_parent, double v_parent, double v_child) {
    if (!(dx_parent > 0.0) || !(v_parent > 0.0) || !(v_child > 0.0)) {
        throw std::invalid_argument("intermediate_size: sizes and speeds must be > 0");
    }
    return dx_parent * v_child / v_parent;
}

double moving_frame_phase(const WavePacket& p, double dt) {
    const double E = energy(p);
    const double pv = dot(p.P0, velocity(p));
    return -(E - pv) * dt / constants().hbar_c_mev_fm;
}

} // namespace wavepack::core
