#include "wavepack/units.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <utility>

#include "wavepack/constants.hpp"

namespace wavepack::units {

namespace {

const char* dim_name(Dim dim) {
    switch (dim) {
        case Dim::energy: return "energy";
        case Dim::length: return "length";
        case Dim::time: return "time";
        case Dim::area: return "area";
        case Dim::inv_volume: return "number density";
        case Dim::temperature: return "temperature";
        case Dim::energy_per_length: return "energy/length";
        case Dim::velocity: return "velocity";
        case Dim::dimensionless: return "dimensionless";
    }
    return "?";
}

// (dimension, suffix) -> scale to canonical unit. Generated once.
const std::map<std::pair<int, std::string>, double>& scale_table() {
    static const std::map<std::pair<int, std::string>, double> table = [] {
        std::map<std::pair<int, std::string>, double> t;
        auto put = [&t](Dim d, const char* u, double s) {
            t[{static_cast<int>(d), u}] = s;
        };
        put(Dim::energy, "eV", 1.0);
        put(Dim::energy, "keV", 1e3);
        put(Dim::energy, "MeV", 1e6);
        put(Dim::energy, "GeV", 1e9);
        put(Dim::energy, "TeV", 1e12);
        put(Dim::length, "m", 1.0);
        put(Dim::length, "km", 1e3);
        put(Dim::length, "cm", 1e-2);
        put(Dim::length, "mm", 1e-3);
        put(Dim::length, "um", 1e-6);
        put(Dim::length, "nm", 1e-9);
        put(Dim::length, "A", 1e-10);
        put(Dim::length, "fm", 1e-15);
        put(Dim::time, "s", 1.0);
        put(Dim::time, "ms", 1e-3);
        put(Dim::time, "us", 1e-6);
        put(Dim::time, "ns", 1e-9);
        put(Dim::time, "ps", 1e-12);
        put(Dim::time, "fs", 1e-15);
        put(Dim::area, "m2", 1.0);
        put(Dim::area, "m^2", 1.0);
        put(Dim::area, "cm2", 1e-4);
        put(Dim::area, "cm^2", 1e-4);
        put(Dim::area, "fm2", 1e-30);
        put(Dim::area, "fm^2", 1e-30);
        put(Dim::area, "b", 1e-28);
        put(Dim::area, "mb", 1e-31);
        put(Dim::inv_volume, "m^-3", 1.0);
        put(Dim::inv_volume, "m-3", 1.0);
        put(Dim::inv_volume, "cm^-3", 1e6);
        put(Dim::inv_volume, "cm-3", 1e6);
        put(Dim::temperature, "K", 1.0);
        put(Dim::energy_per_length, "eV/m", 1.0);
        put(Dim::energy_per_length, "keV/m", 1e3);
        put(Dim::energy_per_length, "MeV/m", 1e6);
        put(Dim::energy_per_length, "GeV/m", 1e9);
        put(Dim::energy_per_length, "MeV/mm", 1e9);
        put(Dim::velocity, "m/s", 1.0);
        return t;
    }();
    return table;
}

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

} // namespace

const char* canonical_symbol(Dim dim) {
    switch (dim) {
        case Dim::energy: return "eV";
        case Dim::length: return "m";
        case Dim::time: return "s";
        case Dim::area: return "m2";
        case Dim::inv_volume: return "m^-3";
        case Dim::temperature: return "K";
        case Dim::energy_per_length: return "eV/m";
        case Dim::velocity: return "m/s";
        case Dim::dimensionless: return "";
    }
    return "";
}

double unit_scale(const std::string& unit, Dim dim) {
    if (dim == Dim::velocity && unit == "c") return constants().c_m_per_s;
    auto it = scale_table().find({static_cast<int>(dim), unit});
    if (it == scale_table().end()) {
        throw UnitError("unit '" + unit + "' is not a " + dim_name(dim) + " unit");
    }
    return it->second;
}

double parse(const std::string& text, Dim dim, const char* default_unit) {
    const std::string s = trim(text);
    if (s.empty()) throw UnitError("empty " + std::string(dim_name(dim)) + " value");
    const char* cstr = s.c_str();
    char* end = nullptr;
    const double value = std::strtod(cstr, &end);
    if (end == cstr) throw UnitError("no number in '" + s + "'");
    std::string unit = trim(std::string(end));
    if (unit.empty()) {
        if (dim == Dim::dimensionless) return value;
        if (!default_unit) {
            throw UnitError("bare number '" + s + "' is ambiguous: give a " +
                            dim_name(dim) + " unit (e.g. " + canonical_symbol(dim) + ")");
        }
        unit = default_unit;
    } else if (dim == Dim::dimensionless) {
        throw UnitError("unexpected unit '" + unit + "' on dimensionless value");
    }
    return value * unit_scale(unit, dim);
}

double s_to_fm(double seconds) { return seconds * constants().c_m_per_s * 1e15; }
double fm_to_s(double fm) { return fm / (constants().c_m_per_s * 1e15); }

std::string fmt_g6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

std::string csv_join(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += fields[i];
    }
    return out;
}

} // namespace wavepack::units
