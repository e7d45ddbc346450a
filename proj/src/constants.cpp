#include "wavepack/constants.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace wavepack {

namespace {

Constants g_table;

std::map<std::string, double Constants::*> member_map() {
    return {
        {"hbar_c_mev_fm", &Constants::hbar_c_mev_fm},
        {"hbar_c_ev_m", &Constants::hbar_c_ev_m},
        {"c_m_per_s", &Constants::c_m_per_s},
        {"alpha", &Constants::alpha},
        {"r_e_m", &Constants::r_e_m},
        {"a_bohr_m", &Constants::a_bohr_m},
        {"k_b_ev_per_k", &Constants::k_b_ev_per_k},
        {"k_b_j_per_k", &Constants::k_b_j_per_k},
        {"n_avogadro", &Constants::n_avogadro},
        {"m_e_mev", &Constants::m_e_mev},
        {"m_e_kg", &Constants::m_e_kg},
        {"m_p_mev", &Constants::m_p_mev},
        {"m_pi_mev", &Constants::m_pi_mev},
        {"tau_pi_s", &Constants::tau_pi_s},
        {"tau_n_s", &Constants::tau_n_s},
        {"eps0_f_per_m", &Constants::eps0_f_per_m},
        {"e_coulomb", &Constants::e_coulomb},
    };
}

} // namespace

const Constants& constants() { return g_table; }

void load_constants_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("constants file not readable: " + path);
    auto members = member_map();
    Constants table = g_table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string key;
        if (!(ss >> key)) continue; // blank
        std::string eq_or_value;
        if (!(ss >> eq_or_value)) {
            throw std::runtime_error("constants file line " + std::to_string(lineno) +
                                     ": missing value for '" + key + "'");
        }
        if (eq_or_value == "=" && !(ss >> eq_or_value)) {
            throw std::runtime_error("constants file line " + std::to_string(lineno) +
                                     ": missing value for '" + key + "'");
        }
        auto it = members.find(key);
        if (it == members.end()) {
            throw std::runtime_error("constants file line " + std::to_string(lineno) +
                                     ": unknown constant '" + key + "'");
        }
        char* end = nullptr;
        double value = std::strtod(eq_or_value.c_str(), &end);
        if (end == eq_or_value.c_str() || *end != '\0') {
            throw std::runtime_error("constants file line " + std::to_string(lineno) +
                                     ": bad number '" + eq_or_value + "'");
        }
        table.*(it->second) = value;
    }
    g_table = table;
}

void reset_constants() { g_table = Constants{}; }

} // namespace wavepack
