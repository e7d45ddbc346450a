#pragma once
#include <stdexcept>
#include <string>
#include <vector>

namespace wavepack::units {

// Dimensions accepted at the text boundary (CLI flags, scenario files).
// Canonical storage units: eV, m, s, m^2, m^-3, K, eV/m, m/s.
enum class Dim {
    energy,            // eV
    length,            // m
    time,              // s
    area,              // m^2
    inv_volume,        // m^-3
    temperature,       // K
    energy_per_length, // eV/m
    velocity,          // m/s
    dimensionless,
};

struct UnitError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Parse "10MeV", "10 MeV", "1e-30 m2", "4e17 m^-3", ... into the canonical
// unit of the dimension. A bare number is accepted only when the caller
// declares a default unit for the field; otherwise it is rejected as
// ambiguous. Unknown or dimensionally wrong suffixes throw UnitError.
double parse(const std::string& text, Dim dim, const char* default_unit = nullptr);

// The canonical unit symbol for a dimension ("eV", "m", ...).
const char* canonical_symbol(Dim dim);

// Scale factor from `unit` to the canonical unit, e.g. ("MeV", energy) = 1e6.
double unit_scale(const std::string& unit, Dim dim);

// fm <-> m and fm^2 <-> m^2.
inline double fm_to_m(double fm) { return fm * 1e-15; }
inline double m_to_fm(double m) { return m * 1e15; }
inline double fm2_to_m2(double fm2) { return fm2 * 1e-30; }
inline double m2_to_fm2(double m2) { return m2 * 1e30; }
inline double ev_to_mev(double ev) { return ev * 1e-6; }
inline double mev_to_ev(double mev) { return mev * 1e6; }

// Times are carried internally as light-travel distance: t[fm] = c t[s] in fm.
double s_to_fm(double seconds);
double fm_to_s(double fm);

// Fixed "%.6g" formatting: the single rendering used for every CSV/table
// number so that repeated runs are byte-identical.
std::string fmt_g6(double value);
std::string csv_join(const std::vector<std::string>& fields);

} // namespace wavepack::units
