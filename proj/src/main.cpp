#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "wavepack/constants.hpp"
#include "wavepack/continuum_1d.hpp"
#include "wavepack/core_packets.hpp"
#include "wavepack/grids.hpp"
#include "wavepack/interactions.hpp"
#include "wavepack/propagation.hpp"
#include "wavepack/scenarios.hpp"
#include "wavepack/units.hpp"
#include "wavepack/vec3.hpp"

namespace {

namespace core = wavepack::core;
namespace prop = wavepack::prop;
namespace c1d = wavepack::c1d;
namespace grids = wavepack::grids;
namespace ix = wavepack::ix;
namespace scen = wavepack::scen;
namespace units = wavepack::units;
using wavepack::Vec3;
using units::fmt_g6;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::string g6(double v) { return fmt_g6(v); }

std::string row(const std::vector<std::string>& fields) { return units::csv_join(fields); }

void print_kv(const std::string& key, const std::string& value) {
    std::printf("%-18s %s\n", key.c_str(), value.c_str());
}

// "a,b,c" where at least one component carries a unit suffix shared by the
// bare ones; an all-zero vector needs no unit. Returns canonical units.
Vec3 parse_vec3(const std::string& text, units::Dim dim) {
    std::vector<std::string> comps;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            comps.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    comps.push_back(cur);
    if (comps.size() != 3) {
        throw units::UnitError("vector '" + text + "' needs three comma-separated components");
    }
    std::string unit;
    double raw[3];
    for (int i = 0; i < 3; ++i) {
        const char* cstr = comps[i].c_str();
        char* end = nullptr;
        raw[i] = std::strtod(cstr, &end);
        if (end == cstr) throw units::UnitError("no number in vector component '" + comps[i] + "'");
        std::string suffix(end);
        while (!suffix.empty() && std::isspace(static_cast<unsigned char>(suffix.front())))
            suffix.erase(suffix.begin());
        while (!suffix.empty() && std::isspace(static_cast<unsigned char>(suffix.back())))
            suffix.pop_back();
        if (!suffix.empty()) {
            if (!unit.empty() && unit != suffix) {
                throw units::UnitError("mixed units in vector '" + text + "'");
            }
            unit = suffix;
        }
    }
    if (unit.empty()) {
        if (raw[0] == 0.0 && raw[1] == 0.0 && raw[2] == 0.0) return {0.0, 0.0, 0.0};
        throw units::UnitError("vector '" + text + "' is ambiguous: give a unit (e.g. " +
                               units::canonical_symbol(dim) + ")");
    }
    const double s = units::unit_scale(unit, dim);
    return {raw[0] * s, raw[1] * s, raw[2] * s};
}

core::Dispersion parse_kind(const std::string& text, double mass_mev) {
    if (text == "auto") {
        return mass_mev == 0.0 ? core::Dispersion::massless : core::Dispersion::relativistic;
    }
    if (text == "rel") return core::Dispersion::relativistic;
    if (text == "nonrel") return core::Dispersion::nonrelativistic;
    if (text == "massless") return core::Dispersion::massless;
    throw units::UnitError("unknown dispersion kind '" + text + "' (rel, nonrel, massless)");
}

// ------------------------------------------------------------------- overlap

struct PacketFlags {
    std::string p = "0,0,0";
    std::string x = "0,0,0";
    std::string sigma = "1e-30 m2";
    std::string mass = "1 MeV"; // at-rest relativistic packet by default
    std::string kind = "auto";
};

core::WavePacket build_packet(const PacketFlags& f) {
    const Vec3 p_ev = parse_vec3(f.p, units::Dim::energy);
    const Vec3 x_m = parse_vec3(f.x, units::Dim::length);
    const double sigma_m2 = units::parse(f.sigma, units::Dim::area, "m2");
    const double mass_mev = units::parse(f.mass, units::Dim::energy, "MeV") * 1e-6;
    return core::make_packet(p_ev * 1e-6, x_m * 1e15, 0.0, units::m2_to_fm2(sigma_m2),
                             mass_mev, parse_kind(f.kind, mass_mev));
}

int cmd_overlap(const PacketFlags& f1, const PacketFlags& f2, const std::string& t_text,
                bool csv) {
    const core::WavePacket p1 = build_packet(f1);
    const core::WavePacket p2 = build_packet(f2);
    const double t_fm = units::s_to_fm(units::parse(t_text, units::Dim::time, "s"));
    const double window = std::min(core::near_field_window(p1), core::near_field_window(p2));
    if (std::abs(t_fm) > window) {
        std::fprintf(stderr,
                     "warning: |t| = %s fm exceeds the near-field window %s fm; "
                     "the rigid-envelope form is no longer accurate\n",
                     g6(std::abs(t_fm)).c_str(), g6(window).c_str());
    }
    const core::OverlapResult res = core::overlap(p1, p2, t_fm);
    if (csv) {
        std::printf("%s\n", row({"amplitude_re", "amplitude_im", "probability", "bound",
                                 "phase_rad"})
                                .c_str());
        std::printf("%s\n", row({g6(res.amplitude.real()), g6(res.amplitude.imag()),
                                 g6(res.probability), g6(res.bound), g6(res.phase)})
                                .c_str());
    } else {
        print_kv("amplitude_re", g6(res.amplitude.real()));
        print_kv("amplitude_im", g6(res.amplitude.imag()));
        char prob[32];
        std::snprintf(prob, sizeof prob, "%.6f", res.probability);
        print_kv("probability", prob);
        print_kv("bound", g6(res.bound));
        print_kv("phase_rad", g6(res.phase));
    }
    return kExitPass;
}

// -------------------------------------------------------------------- spread

int cmd_spread(const std::string& p_text, const std::string& mass_text,
               const std::string& sigma_text, const std::string& t_text, int decades,
               int points, bool natural, bool gnuplot) {
    const double p_mev = units::parse(p_text, units::Dim::energy, "MeV") * 1e-6;
    const double mass_mev = units::parse(mass_text, units::Dim::energy, "MeV") * 1e-6;
    const double sigma_fm2 =
        units::m2_to_fm2(units::parse(sigma_text, units::Dim::area, "m2"));
    const double t_end_s = units::parse(t_text, units::Dim::time, "s");
    if (!(t_end_s > 0.0)) throw units::UnitError("spread: --t must be > 0");
    if (points < 2 || decades < 1) throw units::UnitError("spread: need points >= 2, decades >= 1");
    const core::WavePacket p =
        core::make_packet({0.0, 0.0, p_mev}, {0.0, 0.0, 0.0}, 0.0, sigma_fm2, mass_mev,
                          parse_kind("auto", mass_mev));
    if (gnuplot) {
        std::printf("# gnuplot: set logscale x; plot 'spread.csv' skip 1 using 1:2 with lines "
                    "title 'w_L', '' skip 1 using 1:3 with lines title 'w_T'\n");
    }
    if (natural) {
        std::printf("%s\n", row({"t_fm", "w_L_fm", "w_T_fm", "center_z_fm"}).c_str());
    } else {
        std::printf("%s\n", row({"t_s", "w_L_m", "w_T_m", "center_z_m"}).c_str());
    }
    for (int i = 0; i < points; ++i) {
        const double frac = static_cast<double>(points - 1 - i) / (points - 1);
        const double t_s = t_end_s * std::pow(10.0, -decades * frac);
        const double t_fm = units::s_to_fm(t_s);
        const prop::SpreadState st = prop::spread_state(p, t_fm);
        if (natural) {
            std::printf("%s\n", row({g6(t_fm), g6(st.w_L), g6(st.w_T), g6(st.center.z)}).c_str());
        } else {
            std::printf("%s\n", row({g6(t_s), g6(units::fm_to_m(st.w_L)),
                                     g6(units::fm_to_m(st.w_T)),
                                     g6(units::fm_to_m(st.center.z))})
                                    .c_str());
        }
    }
    return kExitPass;
}

// ----------------------------------------------------------------- xsec, mfp

struct XsecFlags {
    std::string process;
    std::string energy, temperature, wavelength;
    double log_lambda = 10.0;
    double charge_factor = 1.0;
    double polarizability = 0.0; // m^3
    int Z = 82;
    bool kT = false;           // thermal: m v^2 = kT instead of 3 kT
    bool half_variant = false; // Thomson with the 4pi/3 prefactor
};

ix::CrossSection compute_xsec(const XsecFlags& f) {
    if (f.process == "rutherford") {
        if (!f.temperature.empty()) {
            const double T = units::parse(f.temperature, units::Dim::temperature, "K");
            return ix::rutherford_thermal(T, f.log_lambda, f.charge_factor, !f.kT);
        }
        if (f.energy.empty()) throw units::UnitError("rutherford needs --energy or --temperature");
        const double e = units::parse(f.energy, units::Dim::energy, nullptr);
        return ix::rutherford(e, f.log_lambda, f.charge_factor);
    }
    if (f.process == "thomson") return ix::thomson(f.half_variant);
    if (f.process == "rayleigh") {
        if (f.wavelength.empty() || f.polarizability <= 0.0) {
            throw units::UnitError("rayleigh needs --wavelength and --polarizability (m^3)");
        }
        return ix::rayleigh(f.polarizability,
                            units::parse(f.wavelength, units::Dim::length, nullptr));
    }
    if (f.process == "compton") {
        if (f.energy.empty()) throw units::UnitError("compton needs --energy");
        return ix::compton_total(units::parse(f.energy, units::Dim::energy, nullptr));
    }
    if (f.process == "photoelectric") {
        if (f.energy.empty()) throw units::UnitError("photoelectric needs --energy");
        const double k_mec2 = units::parse(f.energy, units::Dim::energy, nullptr) /
                              (wavepack::constants().m_e_mev * 1e6);
        return ix::photoelectric(f.Z, k_mec2);
    }
    if (f.process == "strong") return ix::strong_geometric();
    throw units::UnitError("unknown process '" + f.process + "'");
}

int cmd_xsec(const XsecFlags& f, bool csv, bool natural) {
    const ix::CrossSection xs = compute_xsec(f);
    const char* key = natural ? "sigma_fm2" : "sigma_m2";
    const double value = natural ? units::m2_to_fm2(xs.value_m2) : xs.value_m2;
    if (csv) {
        std::printf("%s\n%s\n", row({"process", key}).c_str(),
                    row({f.process, g6(value)}).c_str());
    } else {
        print_kv("process", f.process);
        print_kv(key, g6(value));
        for (const auto& [name, v] : xs.parameters) print_kv(name, g6(v));
        if (!xs.validity_note.empty()) print_kv("note", xs.validity_note);
    }
    return kExitPass;
}

int cmd_mfp(const XsecFlags& f, const std::string& density_text, const std::string& dedx_text,
            const std::string& sigma_text, bool csv, bool natural) {
    double sigma_m2 = 0.0;
    double density = 0.0;
    double mfp_m = 0.0;
    if (f.process == "eloss") {
        if (f.energy.empty() || dedx_text.empty()) {
            throw units::UnitError("eloss needs --energy and --dEdx");
        }
        const double e = units::parse(f.energy, units::Dim::energy, nullptr);
        const double dedx = units::parse(dedx_text, units::Dim::energy_per_length, nullptr);
        mfp_m = ix::energy_loss_length(e, dedx);
    } else {
        if (f.process == "user") {
            if (sigma_text.empty()) throw units::UnitError("user process needs --sigma");
            sigma_m2 = units::parse(sigma_text, units::Dim::area, nullptr);
        } else {
            sigma_m2 = compute_xsec(f).value_m2;
        }
        if (density_text.empty()) throw units::UnitError("mfp needs --density");
        density = units::parse(density_text, units::Dim::inv_volume, nullptr);
        mfp_m = ix::mean_free_path(sigma_m2, density);
    }
    const double dp_ev = ix::momentum_width_eV(mfp_m);
    const bool has_sigma = f.process != "eloss";
    const std::string mfp_key = natural ? "mfp_fm" : "mfp_m";
    const std::string mfp_val = g6(natural ? units::m_to_fm(mfp_m) : mfp_m);
    if (csv) {
        std::printf("%s\n", row({"process", "sigma_m2", "density_m3", mfp_key,
                                 "momentum_width_eV"})
                                .c_str());
        std::printf("%s\n", row({f.process, has_sigma ? g6(sigma_m2) : "",
                                 has_sigma ? g6(density) : "", mfp_val, g6(dp_ev)})
                                .c_str());
    } else {
        print_kv("process", f.process);
        if (has_sigma) {
            print_kv("sigma_m2", g6(sigma_m2));
            print_kv("density_m^-3", g6(density));
        }
        print_kv(mfp_key, mfp_val);
        print_kv("momentum_width_eV", g6(dp_ev));
    }
    return kExitPass;
}

// ------------------------------------------------------------- verify-delta

int cmd_verify_delta(int cases, double tol, unsigned seed, double lambda0, bool heatmap,
                     double kmin, double kmax, int nk, bool derived, bool serial,
                     bool gnuplot) {
    if (heatmap) {
        if (!(kmin > 0.0) || !(kmax > kmin) || nk < 2) {
            throw units::UnitError("heatmap needs 0 < kmin < kmax and nk >= 2");
        }
        std::vector<double> ks(nk);
        for (int i = 0; i < nk; ++i) ks[i] = kmin + (kmax - kmin) * i / (nk - 1);
        const auto model = c1d::PotentialModel1D::delta(1.0, 1.0);
        const auto grid = grids::delta_heatmap(model, ks, ks, derived, !serial);
        if (gnuplot) {
            std::printf("# gnuplot: set view map; splot 'delta.csv' skip 1 using "
                        "1:2:(sqrt($3**2+$4**2)) with pm3d\n");
        }
        std::printf("%s\n", row({"k1", "k2", "delta_re", "delta_im"}).c_str());
        for (int i = 0; i < nk; ++i) {
            for (int j = 0; j < nk; ++j) {
                const auto v = grid[static_cast<size_t>(i) * nk + j];
                std::printf("%s\n",
                            row({g6(ks[i]), g6(ks[j]), g6(v.real()), g6(v.imag())}).c_str());
            }
        }
        return kExitPass;
    }

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> mass_d(0.5, 2.0), g_d(0.3, 1.5), k_d(0.5, 2.5);
    std::vector<std::string> failures;

    std::printf("# closed-form Delta vs windowed-quadrature extraction (delta potential)\n");
    std::printf("%s\n", row({"case", "k1", "k2", "mass", "g", "closed_re", "closed_im",
                             "fit_re", "fit_im", "rel_err"})
                            .c_str());
    for (int i = 1; i <= cases; ++i) {
        const double mass = mass_d(rng), g = g_d(rng);
        double k1 = k_d(rng), k2 = k_d(rng);
        while (std::abs(k1 - k2) < 0.3) k2 = k_d(rng);
        const auto model = c1d::PotentialModel1D::delta(mass, g);
        const auto closed = c1d::overlap_decomposition(model, k1, k2);
        const auto fit = c1d::fit_overlap_decomposition(model, k1, k2, lambda0);
        const double rel =
            std::abs(closed.delta_term - fit.delta_term) / std::abs(closed.delta_term);
        std::printf("%s\n", row({std::to_string(i), g6(k1), g6(k2), g6(mass), g6(g),
                                 g6(closed.delta_term.real()), g6(closed.delta_term.imag()),
                                 g6(fit.delta_term.real()), g6(fit.delta_term.imag()),
                                 g6(rel)})
                                .c_str());
        if (!(rel <= tol)) {
            failures.push_back("case " + std::to_string(i) + ": rel_err " + g6(rel) +
                               " > tol " + g6(tol));
        }
    }

    std::printf("# free limit: |Delta(g)|/g approaches 2m/(k1 k2) linearly\n");
    std::printf("%s\n", row({"g", "delta_over_g"}).c_str());
    const double klin1 = 1.3, klin2 = 0.7;
    double ratio_min = 0.0, ratio_max = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double g = std::pow(10.0, -2.0 - i);
        const auto model = c1d::PotentialModel1D::delta(1.0, g);
        const double r =
            std::abs(c1d::overlap_decomposition(model, klin1, klin2).delta_term) / g;
        std::printf("%s\n", row({g6(g), g6(r)}).c_str());
        ratio_min = i == 0 ? r : std::min(ratio_min, r);
        ratio_max = i == 0 ? r : std::max(ratio_max, r);
    }
    if (ratio_max / ratio_min - 1.0 > 1e-3) {
        failures.push_back("free limit not linear: |Delta|/g spread " +
                           g6(ratio_max / ratio_min - 1.0));
    }

    std::printf("# smeared four-window average vs -delta_term_derived (case grid)\n");
    std::printf("%s\n", row({"lambda", "residual"}).c_str());
    const auto model = c1d::PotentialModel1D::delta(1.0, 1.0);
    for (double lam : {2.0, 4.0, 8.0, 16.0, 32.0}) {
        const auto dec = c1d::overlap_decomposition(model, klin1, klin2);
        const auto smeared = c1d::smeared_windowed_overlap(model, klin1, klin2, lam);
        const double resid = std::abs(smeared + dec.delta_term_derived);
        std::printf("%s\n", row({g6(lam), g6(resid)}).c_str());
        if (!(resid <= 1e-6)) {
            failures.push_back("smeared residual " + g6(resid) + " at lambda " + g6(lam));
        }
    }

    for (const auto& f : failures) std::fprintf(stderr, "FAIL %s\n", f.c_str());
    return failures.empty() ? kExitPass : kExitCheckFailed;
}

// ----------------------------------------------------------------- nonortho

int cmd_nonortho(double kbar, double width, double mass, double g, double kmin, double kmax,
                 int n, double tmax, int points, double avg_horizon, double tol, bool serial,
                 bool gnuplot) {
    if (!(kmin > 0.0) || !(kmax > kmin) || n < 2 || points < 2 || !(tmax > 0.0)) {
        throw units::UnitError("nonortho: need 0 < kmin < kmax, n >= 2, points >= 2, tmax > 0");
    }
    const auto model = c1d::PotentialModel1D::delta(mass, g);
    const auto kernel = grids::norm_drift_assemble(c1d::gaussian_alpha(kbar, width), model,
                                                   kmin, kmax, n, !serial);
    std::vector<double> ts(points);
    for (int i = 0; i < points; ++i) ts[i] = tmax * i / (points - 1);
    const auto norms = grids::norm_drift_sweep(kernel, ts, !serial);
    if (gnuplot) {
        std::printf("# gnuplot: plot 'drift.csv' skip 1 using 1:2 with lines title 'N(t)'\n");
    }
    std::printf("%s\n", row({"t", "norm"}).c_str());
    double amplitude = 0.0;
    for (int i = 0; i < points; ++i) {
        std::printf("%s\n", row({g6(ts[i]), g6(norms[i])}).c_str());
        amplitude = std::max(amplitude, std::abs(norms[i] - 1.0));
    }
    const double avg = kernel.time_average(avg_horizon);
    // Diagonal quadrature entries never dephase; their sum is an O(1/n)
    // discretization residue, and the average converges to 1 plus it.
    double residue = 0.0;
    for (int i = 0; i < n; ++i) {
        residue += kernel.mat[static_cast<size_t>(i) * n + i].real();
    }
    std::printf("# amplitude %s\n", g6(amplitude).c_str());
    std::printf("# time_average(%s) %s\n", g6(avg_horizon).c_str(), g6(avg).c_str());
    std::printf("# diagonal_residue %s\n", g6(residue).c_str());
    std::vector<std::string> failures;
    if (!(amplitude > 1e-6)) {
        failures.push_back("norm oscillation amplitude " + g6(amplitude) + " <= 1e-6");
    }
    if (!(std::abs(avg - 1.0 - residue) <= tol)) {
        failures.push_back("time average deviates: |" + g6(avg) + " - 1 - (" + g6(residue) +
                           ")| > " + g6(tol));
    }
    for (const auto& f : failures) std::fprintf(stderr, "FAIL %s\n", f.c_str());
    return failures.empty() ? kExitPass : kExitCheckFailed;
}

// ----------------------------------------------------------- scenario/ledger

int cmd_scenario(const std::string& path) {
    const auto reports = scen::run_scenario_file(path);
    std::fputs(scen::reports_csv(reports).c_str(), stdout);
    if (!scen::all_pass(reports)) {
        for (const auto& rep : reports) {
            if (rep.anchor && !rep.anchor->ok()) {
                std::fprintf(stderr, "FAIL %s: computed %s vs %s (ratio %s, %s)\n",
                             rep.name.c_str(), g6(rep.anchor->computed).c_str(),
                             g6(rep.anchor->paper_value).c_str(), g6(rep.anchor->ratio()).c_str(),
                             to_string(rep.anchor->cls));
            }
        }
        return kExitCheckFailed;
    }
    return kExitPass;
}

int cmd_ledger() {
    const auto rows = scen::builtin_ledger();
    std::fputs(scen::ledger_csv(rows).c_str(), stdout);
    bool ok = true;
    for (const auto& r : rows) {
        if (!r.ok()) {
            ok = false;
            std::fprintf(stderr, "FAIL %s: computed %s vs %s (ratio %s, %s)\n", r.id.c_str(),
                         g6(r.computed).c_str(), g6(r.paper_value).c_str(), g6(r.ratio()).c_str(),
                         to_string(r.cls));
        }
    }
    return ok ? kExitPass : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* path = std::getenv("WAVEPACK_CONSTANTS")) {
        try {
            wavepack::load_constants_file(path);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "error: WAVEPACK_CONSTANTS: %s\n", e.what());
            return kExitUsage;
        }
    }

    CLI::App app{"wavepack: Gaussian wave-packet algebra, spreading, cross sections, "
                 "and coherence-length scenarios"};
    app.require_subcommand(1);
    app.fallthrough();
    bool csv = false, natural = false, gnuplot = false;
    app.add_flag("--csv", csv, "CSV output (default: aligned table)");
    app.add_flag("--natural", natural, "report in natural units (fm, fm^2) where applicable");
    app.add_flag("--gnuplot-hint", gnuplot, "prepend a ready-made gnuplot command as a comment");

    // overlap
    auto* overlap = app.add_subcommand("overlap", "closed-form overlap of two packets");
    PacketFlags f1, f2;
    std::string t_text = "0 s";
    overlap->add_option("--p1", f1.p, "packet 1 momentum 'px,py,pz' (energy units)");
    overlap->add_option("--x1", f1.x, "packet 1 center 'x,y,z' (length units)");
    overlap->add_option("--sigma1", f1.sigma, "packet 1 width^2 (area; bare = m2)");
    overlap->add_option("--mass1", f1.mass, "packet 1 mass (energy; bare = MeV)");
    overlap->add_option("--kind1", f1.kind, "rel | nonrel | massless (default auto)");
    overlap->add_option("--p2", f2.p, "packet 2 momentum");
    overlap->add_option("--x2", f2.x, "packet 2 center");
    overlap->add_option("--sigma2", f2.sigma, "packet 2 width^2");
    overlap->add_option("--mass2", f2.mass, "packet 2 mass");
    overlap->add_option("--kind2", f2.kind, "rel | nonrel | massless (default auto)");
    overlap->add_option("--t", t_text, "evaluation time (bare = s)");

    // spread
    auto* spread = app.add_subcommand("spread", "far-field widths over a log time sweep");
    std::string sp_p, sp_mass = "0 MeV", sp_sigma = "1e-30 m2", sp_t;
    int sp_decades = 6, sp_points = 25;
    spread->add_option("--p", sp_p, "momentum magnitude (bare = MeV)")->required();
    spread->add_option("--mass", sp_mass, "mass (bare = MeV)");
    spread->add_option("--sigma", sp_sigma, "initial width^2 (bare = m2)");
    spread->add_option("--t", sp_t, "sweep end time (e.g. 1s)")->required();
    spread->add_option("--decades", sp_decades, "log decades below the end time");
    spread->add_option("--points", sp_points, "rows in the sweep");

    // xsec / mfp
    XsecFlags xf;
    std::string density_text, dedx_text, sigma_text;
    auto add_xsec_flags = [&](CLI::App* cmd, bool mfp) {
        cmd->add_option("--process", xf.process,
                        mfp ? "rutherford|thomson|rayleigh|compton|photoelectric|strong|"
                              "eloss|user"
                            : "rutherford|thomson|rayleigh|compton|photoelectric|strong")
            ->required();
        cmd->add_option("--energy", xf.energy, "kinetic/photon energy (e.g. 10MeV)");
        cmd->add_option("--temperature", xf.temperature, "thermal Rutherford (e.g. 3000K)");
        cmd->add_option("--logLambda", xf.log_lambda, "Coulomb logarithm (default 10)");
        cmd->add_option("--charge-factor", xf.charge_factor, "Z1*Z2 charge factor");
        cmd->add_option("--wavelength", xf.wavelength, "Rayleigh wavelength (length)");
        cmd->add_option("--polarizability", xf.polarizability, "Rayleigh polarizability, m^3");
        cmd->add_option("--Z", xf.Z, "atomic number (photoelectric)");
        cmd->add_flag("--kT", xf.kT, "thermal energy m v^2 = kT instead of 3 kT");
        cmd->add_flag("--half-variant", xf.half_variant, "Thomson with 4pi/3 prefactor");
    };
    auto* xsec = app.add_subcommand("xsec", "cross sections in SI (or --natural fm^2)");
    add_xsec_flags(xsec, false);
    auto* mfp = app.add_subcommand("mfp", "mean free path / coherence length");
    add_xsec_flags(mfp, true);
    mfp->add_option("--density", density_text, "scatterer number density (e.g. 4e17m^-3)");
    mfp->add_option("--dEdx", dedx_text, "energy-loss rate (eloss process)");
    mfp->add_option("--sigma", sigma_text, "user-supplied cross section (area)");

    // verify-delta
    auto* vdelta = app.add_subcommand("verify-delta",
                                      "theorem-2 check: closed-form Delta vs quadrature");
    int vd_cases = 10, vd_nk = 40;
    double vd_tol = 0.02, vd_lambda = 6.0, vd_kmin = 0.5, vd_kmax = 2.5;
    unsigned vd_seed = 20260818;
    bool vd_heatmap = false, vd_derived = false, vd_serial = false;
    vdelta->add_option("--cases", vd_cases, "random delta-potential cases (default 10)");
    vdelta->add_option("--tol", vd_tol, "relative tolerance (default 0.02)");
    vdelta->add_option("--seed", vd_seed, "RNG seed");
    vdelta->add_option("--lambda", vd_lambda, "base window half-length");
    vdelta->add_flag("--heatmap", vd_heatmap, "emit Delta(k1,k2) grid instead");
    vdelta->add_option("--kmin", vd_kmin, "heatmap k grid start");
    vdelta->add_option("--kmax", vd_kmax, "heatmap k grid end");
    vdelta->add_option("--nk", vd_nk, "heatmap grid points per axis");
    vdelta->add_flag("--derived", vd_derived, "heatmap of the window-derived variant");
    vdelta->add_flag("--serial", vd_serial, "force the serial reference kernels");

    // nonortho
    auto* nonortho = app.add_subcommand("nonortho",
                                        "norm drift of a continuum superposition");
    double no_kbar = 1.0, no_width = 0.2, no_mass = 1.0, no_g = 1.0, no_kmin = 0.1,
           no_kmax = 2.0, no_tmax = 60.0, no_avg = 5000.0, no_tol = 1e-3;
    int no_n = 120, no_points = 121;
    bool no_serial = false;
    nonortho->add_option("--kbar", no_kbar, "weight center wavenumber");
    nonortho->add_option("--width", no_width, "weight width");
    nonortho->add_option("--mass", no_mass, "particle mass (theory units)");
    nonortho->add_option("--g", no_g, "delta-potential strength");
    nonortho->add_option("--kmin", no_kmin, "k-integration lower edge");
    nonortho->add_option("--kmax", no_kmax, "k-integration upper edge");
    nonortho->add_option("--n", no_n, "quadrature nodes");
    nonortho->add_option("--tmax", no_tmax, "sweep end time");
    nonortho->add_option("--points", no_points, "sweep rows");
    nonortho->add_option("--avg-horizon", no_avg, "time-average horizon T");
    nonortho->add_option("--tol", no_tol,
                         "time-average tolerance beyond the diagonal quadrature residue");
    nonortho->add_flag("--serial", no_serial, "force the serial reference kernels");

    // scenario run <file>
    auto* scenario = app.add_subcommand("scenario", "evaluate a scenario file");
    scenario->require_subcommand(1);
    auto* scen_run = scenario->add_subcommand("run", "run scenarios from a file");
    std::string scen_file;
    scen_run->add_option("file", scen_file, "scenario file path")->required();

    // ledger
    app.add_subcommand("ledger", "reproduce every anchored estimate with pass/fail");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(overlap)) return cmd_overlap(f1, f2, t_text, csv);
        if (app.got_subcommand(spread)) {
            return cmd_spread(sp_p, sp_mass, sp_sigma, sp_t, sp_decades, sp_points, natural,
                              gnuplot);
        }
        if (app.got_subcommand(xsec)) return cmd_xsec(xf, csv, natural);
        if (app.got_subcommand(mfp)) {
            return cmd_mfp(xf, density_text, dedx_text, sigma_text, csv, natural);
        }
        if (app.got_subcommand(vdelta)) {
            return cmd_verify_delta(vd_cases, vd_tol, vd_seed, vd_lambda, vd_heatmap, vd_kmin,
                                    vd_kmax, vd_nk, vd_derived, vd_serial, gnuplot);
        }
        if (app.got_subcommand(nonortho)) {
            return cmd_nonortho(no_kbar, no_width, no_mass, no_g, no_kmin, no_kmax, no_n,
                                no_tmax, no_points, no_avg, no_tol, no_serial, gnuplot);
        }
        if (app.got_subcommand(scenario)) return cmd_scenario(scen_file);
        return cmd_ledger();
    } catch (const units::UnitError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const scen::ScenarioError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
}
