#pragma once

#include <map>
#include <string>

// Cross sections, mean free paths, energy-loss lengths, and plasma screening
// quantities. Everything here is SI: energies in eV, lengths in m, areas in
// m^2, densities in 1/m^3, temperatures in K. The CLI layer converts to
// natural units on request.
namespace wavepack::ix {

enum class Process {
    rutherford,
    thomson,
    rayleigh,
    compton,
    photoelectric,
    strong_geometric,
    user_supplied,
};

struct CrossSection {
    Process process = Process::user_supplied;
    double value_m2 = 0.0;
    std::map<std::string, double> parameters;
    std::string validity_note;
};

struct Medium {
    std::string label;
    double number_density_m3 = 0.0;
    double temperature_K = 0.0;   // 0 = unset
    double dEdx_eV_per_m = 0.0;   // 0 = unset
};

// Screened Coulomb scattering, sigma = 4 pi (Zeff alpha hbar c / E)^2 log(Lambda)
// with E = m v^2, i.e. twice the nonrelativistic kinetic energy. The log(Lambda)
// cutoff absorbs charge screening; charge_factor scales the coupling for a
// target of charge Z. Exact consequence: sigma(E1)/sigma(E2) = (E2/E1)^2.
CrossSection rutherford(double e_kinetic_eV, double log_lambda,
                        double charge_factor = 1.0);

// Thermal variant: E = m v^2 evaluated from equipartition. By default
// m <v^2> = 3 k T (three translational degrees of freedom); use_3kT = false
// selects the single-degree convention m v^2 = k T instead.
CrossSection rutherford_thermal(double temperature_K, double log_lambda,
                                double charge_factor = 1.0, bool use_3kT = true);

// sigma_Th = (8 pi / 3) r_e^2 = 6.652e-29 m^2. The half-size (4 pi / 3)
// variant appears in some older references and is exposed behind the flag.
CrossSection thomson(bool half_variant = false);

// Rayleigh scattering from a polarizable scatterer, sigma = (128 pi^5 / 3)
// alpha_v^2 / lambda^4 with alpha_v the polarizability volume (m^3). This
// equals (8 pi / 3) (pi alpha_SI / eps0)^2 / lambda^4 for the SI
// polarizability alpha_SI = 4 pi eps0 alpha_v. Only the lambda^-4 scaling is
// anchored against external numbers; the absolute prefactor is the textbook
// dipole result (Jackson) and is carried as-is.
CrossSection rayleigh(double polarizability_m3, double wavelength_m);

// sigma(lambda1)/sigma(lambda2) = (lambda2/lambda1)^4.
double rayleigh_ratio(double lambda1_m, double lambda2_m);

// Compton-shifted photon energy k' = m k0 / (m + k0 (1 - cos theta)).
double compton_shifted_energy(double k0_eV, double theta);

// Klein-Nishina differential cross section (unpolarized),
// dsigma/dOmega = (r_e^2 / 2) (k'/k0)^2 (k0/k' + k'/k0 - sin^2 theta)  [m^2/sr].
double compton_differential(double k0_eV, double theta);

// Total Compton cross section by quadrature over solid angle; tends to the
// Thomson value as k0 -> 0.
CrossSection compton_total(double k0_eV);

// K-shell photoelectric cross section in the Born regime,
// sigma = (16/3) sqrt(2) pi r_e^2 alpha^4 Z^5 k^{-7/2}, with the photon
// energy k given in units of the electron rest energy (the only convention
// that keeps the formula dimensionless). Grows steeply at low energy; reaches
// the 10 Mb scale for lead near 10 keV.
CrossSection photoelectric(int Z, double k_mec2);

// Geometric strong-interaction cross section sigma = (hbar c / m_pi)^2.
CrossSection strong_geometric();

// L = 1 / (sigma n).
double mean_free_path(double sigma_m2, double n_m3);
double mean_free_path(const CrossSection& sigma, const Medium& medium);

// L = E / (dE/dx).
double energy_loss_length(double e_eV, double dEdx_eV_per_m);

// Packet width from the mean free path: sqrt(sigma) = L_mfp (identity map,
// kept explicit because it is the load-bearing modeling step).
double packet_size_from_mfp(double l_mfp_m);

// Conjugate momentum width, hbar c / width, in eV.
double momentum_width_eV(double width_m);

// omega_P = sqrt(n e^2 / (eps0 m_e)) in rad/s.
double plasma_frequency(double n_e_m3);

// lambda_D = sqrt(eps0 k_B T / (n e^2)) in m.
double debye_length(double n_e_m3, double temperature_K);

struct PlasmaMode {
    double omega = 0.0; // rad/s
    double k = 0.0;     // 1/m (propagating) or decay constant (evanescent)
    bool propagating = false;
};

// omega(k) = sqrt(omega_P^2 + k^2 c^2); real k always propagates.
PlasmaMode photon_dispersion(double omega_P, double k_per_m);

// Inverse dispersion: for omega > omega_P returns the propagating wavenumber
// sqrt(omega^2 - omega_P^2)/c; below cutoff the mode is evanescent and k is
// the spatial decay constant sqrt(omega_P^2 - omega^2)/c.
PlasmaMode wavenumber_for(double omega_P, double omega);

} // namespace wavepack::ix
