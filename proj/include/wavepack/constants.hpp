#pragma once
#include <string>

namespace wavepack {

// Physical constants (CODATA 2018 / PDG). Internal computations use natural
// units hbar = c = 1 with energies in MeV and lengths in fm; the single
// conversion constant is hbar_c. SI values appear only at the interaction /
// CLI boundary.
struct Constants {
    double hbar_c_mev_fm = 197.3269804;       // MeV fm
    double hbar_c_ev_m = 1.973269804e-7;      // eV m   (same constant, SI-ish units)
    double c_m_per_s = 2.99792458e8;          // m/s (exact)
    double alpha = 7.2973525693e-3;           // fine-structure constant
    double r_e_m = 2.8179403262e-15;          // classical electron radius, m
    double a_bohr_m = 0.529177210903e-10;     // Bohr radius, m
    double k_b_ev_per_k = 8.617333262e-5;     // Boltzmann, eV/K
    double k_b_j_per_k = 1.380649e-23;        // Boltzmann, J/K (exact)
    double n_avogadro = 6.02214076e23;        // 1/mol (exact)
    double m_e_mev = 0.51099895000;           // electron mass, MeV
    double m_e_kg = 9.1093837015e-31;         // electron mass, kg
    double m_p_mev = 938.27208816;            // proton mass, MeV
    double m_pi_mev = 139.57039;              // charged pion mass, MeV
    double tau_pi_s = 2.6033e-8;              // charged pion lifetime, s
    double tau_n_s = 878.4;                   // free neutron lifetime, s
    double eps0_f_per_m = 8.8541878128e-12;   // vacuum permittivity, F/m
    double e_coulomb = 1.602176634e-19;       // elementary charge, C (exact)

    // e^2/(4 pi eps0) expressed as alpha*hbar_c: 1.43996 MeV fm.
    double coulomb_mev_fm() const { return alpha * hbar_c_mev_fm; }
};

// Process-wide table. Immutable after first access unless an override file is
// loaded before any computation (the CLI honors WAVEPACK_CONSTANTS this way).
const Constants& constants();

// Replace selected entries from a file of "key value" lines (# comments,
// blank lines allowed). Keys are the member names above. Unknown keys or
// malformed numbers throw std::runtime_error with the offending line.
void load_constants_file(const std::string& path);

// Reset to the built-in table (test support).
void reset_constants();

} // namespace wavepack
