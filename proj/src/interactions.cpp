#include "wavepack/interactions.hpp"

#include <cmath>
#include <stdexcept>

#include "wavepack/constants.hpp"
#include "wavepack/quadrature.hpp"

namespace wavepack::ix {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be > 0");
}
} // namespace

CrossSection rutherford(double e_kinetic_eV, double log_lambda, double charge_factor) {
    require_positive(e_kinetic_eV, "rutherford: kinetic energy");
    if (log_lambda < 0.0) throw std::invalid_argument("rutherford: logLambda must be >= 0");
    require_positive(charge_factor, "rutherford: charge_factor");
    const auto& c = constants();
    const double e_field = 2.0 * e_kinetic_eV; // E = m v^2
    const double amp = charge_factor * c.alpha * c.hbar_c_ev_m / e_field; // m
    CrossSection xs;
    xs.process = Process::rutherford;
    xs.value_m2 = 4.0 * kPi * amp * amp * log_lambda;
    xs.parameters = {{"E_kinetic_eV", e_kinetic_eV},
                     {"logLambda", log_lambda},
                     {"charge_factor", charge_factor}};
    xs.validity_note = "screened Coulomb, E = m v^2 = 2 E_kin; exact (E2/E1)^2 scaling";
    return xs;
}

CrossSection rutherford_thermal(double temperature_K, double log_lambda,
                                double charge_factor, bool use_3kT) {
    require_positive(temperature_K, "rutherford_thermal: temperature");
    const auto& c = constants();
    // m v^2 = 3 k T from equipartition; E_kin = m v^2 / 2.
    const double mv2 = (use_3kT ? 3.0 : 1.0) * c.k_b_ev_per_k * temperature_K;
    CrossSection xs = rutherford(0.5 * mv2, log_lambda, charge_factor);
    xs.parameters["temperature_K"] = temperature_K;
    xs.parameters["use_3kT"] = use_3kT ? 1.0 : 0.0;
    xs.validity_note = use_3kT ? "thermal Coulomb, m v^2 = 3 k T"
                               : "thermal Coulomb, m v^2 = k T";
    return xs;
}

CrossSection thomson(bool half_variant) {
    const auto& c = constants();
    CrossSection xs;
    xs.process = Process::thomson;
    const double pref = half_variant ? (4.0 * kPi / 3.0) : (8.0 * kPi / 3.0);
    xs.value_m2 = pref * c.r_e_m * c.r_e_m;
    xs.parameters = {{"r_e_m", c.r_e_m}};
    xs.validity_note = half_variant ? "nonstandard (4 pi / 3) r_e^2 variant"
                                    : "free-electron Thomson limit";
    return xs;
}

CrossSection rayleigh(double polarizability_m3, double wavelength_m) {
    require_positive(polarizability_m3, "rayleigh: polarizability");
    require_positive(wavelength_m, "rayleigh: wavelength");
    CrossSection xs;
    xs.process = Process::rayleigh;
    const double p5 = kPi * kPi * kPi * kPi * kPi;
    xs.value_m2 = (128.0 * p5 / 3.0) * polarizability_m3 * polarizability_m3 /
                  std::pow(wavelength_m, 4);
    xs.parameters = {{"polarizability_m3", polarizability_m3},
                     {"wavelength_m", wavelength_m}};
    xs.validity_note = "dipole Rayleigh; only the lambda^-4 scaling is anchored";
    return xs;
}

double rayleigh_ratio(double lambda1_m, double lambda2_m) {
    require_positive(lambda1_m, "rayleigh_ratio: lambda1");
    require_positive(lambda2_m, "rayleigh_ratio: lambda2");
    const double r = lambda2_m / lambda1_m;
    return r * r * r * r;
}

double compton_shifted_energy(double k0_eV, double theta) {
    require_positive(k0_eV, "compton: k0");
    if (theta < 0.0 || theta > kPi) throw std::invalid_argument("compton: theta outside [0, pi]");
    const double m = constants().m_e_mev * 1e6;
    return m * k0_eV / (m + k0_eV * (1.0 - std::cos(theta)));
}

double compton_differential(double k0_eV, double theta) {
    const auto& c = constants();
    const double kp = compton_shifted_energy(k0_eV, theta);
    const double ratio = kp / k0_eV;
    const double s = std::sin(theta);
    return 0.5 * c.r_e_m * c.r_e_m * ratio * ratio * (1.0 / ratio + ratio - s * s);
}

CrossSection compton_total(double k0_eV) {
    require_positive(k0_eV, "compton: k0");
    const double total =
        2.0 * kPi *
        quad::adaptive_gk_real(
            [k0_eV](double th) { return compton_differential(k0_eV, th) * std::sin(th); }, 0.0,
            kPi, 0.0, 1e-12);
    CrossSection xs;
    xs.process = Process::compton;
    xs.value_m2 = total;
    xs.parameters = {{"k0_eV", k0_eV}};
    xs.validity_note = "Klein-Nishina total, quadrature over solid angle";
    return xs;
}

CrossSection photoelectric(int Z, double k_mec2) {
    if (Z < 1) throw std::invalid_argument("photoelectric: Z must be >= 1");
    require_positive(k_mec2, "photoelectric: photon energy");
    const auto& c = constants();
    const double a4 = std::pow(c.alpha, 4);
    const double z5 = std::pow(static_cast<double>(Z), 5);
    CrossSection xs;
    xs.process = Process::photoelectric;
    xs.value_m2 = (16.0 / 3.0) * std::sqrt(2.0) * kPi * c.r_e_m * c.r_e_m * a4 * z5 *
                  std::pow(k_mec2, -3.5);
    xs.parameters = {{"Z", static_cast<double>(Z)}, {"k_mec2", k_mec2}};
    xs.validity_note = "Born-regime K-shell capture; valid well above threshold";
    return xs;
}

CrossSection strong_geometric() {
    const auto& c = constants();
    const double range_m = (c.hbar_c_mev_fm / c.m_pi_mev) * 1e-15; // pion Compton wavelength
    CrossSection xs;
    xs.process = Process::strong_geometric;
    xs.value_m2 = range_m * range_m;
    xs.parameters = {{"m_pi_MeV", c.m_pi_mev}};
    xs.validity_note = "geometric (hbar c / m_pi)^2 estimate";
    return xs;
}

double mean_free_path(double sigma_m2, double n_m3) {
    require_positive(sigma_m2, "mean_free_path: sigma");
    require_positive(n_m3, "mean_free_path: number density");
    return 1.0 / (sigma_m2 * n_m3);
}

double mean_free_path(const CrossSection& sigma, const Medium& medium) {
    return mean_free_path(sigma.value_m2, medium.number_density_m3);
}

double energy_loss_length(double e_eV, double dEdx_eV_per_m) {
    require_positive(e_eV, "energy_loss_length: energy");
    require_positive(dEdx_eV_per_m, "energy_loss_length: dE/dx");
    return e_eV / dEdx_eV_per_m;
}

double packet_size_from_mfp(double l_mfp_m) {
    if (!(l_mfp_m > 0.0)) throw std::domain_error("packet_size_from_mfp: L must be > 0");
    return l_mfp_m;
}

double momentum_width_eV(double width_m) {
    require_positive(width_m, "momentum_width: width");
    return constants().hbar_c_ev_m / width_m;
}

double plasma_frequency(double n_e_m3) {
    require_positive(n_e_m3, "plasma_frequency: density");
    const auto& c = constants();
    return std::sqrt(n_e_m3 * c.e_coulomb * c.e_coulomb / (c.eps0_f_per_m * c.m_e_kg));
}

double debye_length(double n_e_m3, double temperature_K) {
    require_positive(n_e_m3, "debye_length: density");
    require_positive(temperature_K, "debye_length: temperature");
    const auto& c = constants();
    return std::sqrt(c.eps0_f_per_m * c.k_b_j_per_k * temperature_K /
                     (n_e_m3 * c.e_coulomb * c.e_coulomb));
}

PlasmaMode photon_dispersion(double omega_P, double k_per_m) {
    if (omega_P < 0.0 || k_per_m < 0.0) throw std::invalid_argument("photon_dispersion: negative input");
    const double c = constants().c_m_per_s;
    PlasmaMode mode;
    mode.k = k_per_m;
    mode.omega = std::sqrt(omega_P * omega_P + k_per_m * k_per_m * c * c);
    mode.propagating = true;
    return mode;
}

PlasmaMode wavenumber_for(double omega_P, double omega) {
    if (omega_P < 0.0 || omega < 0.0) throw std::invalid_argument("wavenumber_for: negative input");
    const double c = constants().c_m_per_s;
    PlasmaMode mode;
    mode.omega = omega;
    mode.propagating = omega > omega_P;
    const double diff = mode.propagating ? omega * omega - omega_P * omega_P
                                         : omega_P * omega_P - omega * omega;
    mode.k = std::sqrt(diff) / c;
    return mode;
}

} // namespace wavepack::ix
