#include "wavepack/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "wavepack/constants.hpp"
#include "wavepack/units.hpp"

namespace wavepack::scen {

namespace {

// Bound-state / catalog sizes quoted from the literature, not derived.
constexpr double kNucleusSize_m = 1e-15;
constexpr double kAtomSize_m = 1e-10;
constexpr double kMetalElectronMfp_m = 1e-7;
constexpr double kSolarSourceLo_m = 1e-10;
constexpr double kSolarSourceHi_m = 1e-6;
constexpr double kSupernovaCore_m = 1e-16;
constexpr double kSupernovaSurface_m = 1e-11;
constexpr double kHydrogenSigma_m2 = 1e-20;
constexpr double kLogLambda = 10.0; // the standard Coulomb-logarithm value

double relativistic_v(double p_mev, double m_mev) {
    return p_mev / std::sqrt(p_mev * p_mev + m_mev * m_mev);
}

bool ratio_within(double r, double tol) { return std::abs(r - 1.0) <= tol; }

} // namespace

const char* to_string(ToleranceClass cls) {
    switch (cls) {
    case ToleranceClass::exact_ratio: return "exact-ratio";
    case ToleranceClass::pct_1: return "pct-1";
    case ToleranceClass::pct_2: return "pct-2";
    case ToleranceClass::pct_15: return "pct-15";
    case ToleranceClass::factor_2: return "factor-2";
    case ToleranceClass::order_of_magnitude: return "order-of-magnitude";
    case ToleranceClass::flagged_inconsistent: return "flagged-inconsistent";
    }
    return "?";
}

const char* to_string(Particle p) {
    switch (p) {
    case Particle::proton: return "proton";
    case Particle::pion: return "pion";
    case Particle::muon: return "muon";
    case Particle::neutrino: return "neutrino";
    case Particle::electron: return "electron";
    case Particle::positron: return "positron";
    case Particle::photon: return "photon";
    case Particle::neutron: return "neutron";
    case Particle::quark_jet: return "quark_jet";
    case Particle::atom: return "atom";
    }
    return "?";
}

const char* to_string(Stage s) {
    switch (s) {
    case Stage::initial: return "initial";
    case Stage::final_state: return "final";
    case Stage::natural: return "natural";
    }
    return "?";
}

const char* to_string(Mechanism m) {
    switch (m) {
    case Mechanism::rutherford: return "rutherford";
    case Mechanism::energy_loss: return "energy_loss";
    case Mechanism::strong_geometric: return "strong_geometric";
    case Mechanism::bound_state: return "bound_state";
    case Mechanism::coulomb_gas: return "coulomb_gas";
    case Mechanism::parent_decay: return "parent_decay";
    case Mechanism::detector_unit: return "detector_unit";
    case Mechanism::decay_length: return "decay_length";
    case Mechanism::arrival_lag: return "arrival_lag";
    case Mechanism::cmb_epoch: return "cmb_epoch";
    }
    return "?";
}

std::optional<Particle> parse_particle(const std::string& s) {
    static const std::map<std::string, Particle> table = {
        {"proton", Particle::proton},     {"pion", Particle::pion},
        {"muon", Particle::muon},         {"neutrino", Particle::neutrino},
        {"electron", Particle::electron}, {"positron", Particle::positron},
        {"photon", Particle::photon},     {"neutron", Particle::neutron},
        {"quark_jet", Particle::quark_jet}, {"atom", Particle::atom},
    };
    auto it = table.find(s);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

std::optional<Stage> parse_stage(const std::string& s) {
    if (s == "initial") return Stage::initial;
    if (s == "final") return Stage::final_state;
    if (s == "natural") return Stage::natural;
    return std::nullopt;
}

std::optional<Mechanism> parse_mechanism(const std::string& s) {
    static const std::map<std::string, Mechanism> table = {
        {"rutherford", Mechanism::rutherford},
        {"energy_loss", Mechanism::energy_loss},
        {"strong_geometric", Mechanism::strong_geometric},
        {"bound_state", Mechanism::bound_state},
        {"coulomb_gas", Mechanism::coulomb_gas},
        {"parent_decay", Mechanism::parent_decay},
        {"detector_unit", Mechanism::detector_unit},
        {"decay_length", Mechanism::decay_length},
        {"arrival_lag", Mechanism::arrival_lag},
        {"cmb_epoch", Mechanism::cmb_epoch},
    };
    auto it = table.find(s);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

std::string AnchorRow::pass() const {
    if (cls == ToleranceClass::flagged_inconsistent) return "flagged";
    return ok() ? "yes" : "no";
}

bool AnchorRow::ok() const {
    const double r = ratio();
    switch (cls) {
    case ToleranceClass::exact_ratio: return ratio_within(r, 1e-12);
    case ToleranceClass::pct_1: return ratio_within(r, 0.01);
    case ToleranceClass::pct_2: return ratio_within(r, 0.02);
    case ToleranceClass::pct_15: return ratio_within(r, 0.15);
    case ToleranceClass::factor_2: return r >= 0.5 && r <= 2.0;
    case ToleranceClass::order_of_magnitude: return r >= 0.1 && r <= 10.0;
    case ToleranceClass::flagged_inconsistent: return true; // reported, not judged
    }
    return false;
}

ScenarioReport make_length_report(const std::string& name, double length_m) {
    if (!(length_m > 0.0)) throw std::invalid_argument("report length must be > 0");
    ScenarioReport r;
    r.name = name;
    r.coherence_length_m = length_m;
    r.sigma_m2 = length_m * length_m;
    r.momentum_width_eV = constants().hbar_c_ev_m / length_m;
    return r;
}

ScenarioReport bunch_coherence() {
    const auto& c = constants();
    auto r = make_length_report("proton-bunch", c.a_bohr_m * c.m_e_mev / c.m_p_mev);
    r.provenance = {"a_proton = a_B m_e/m_p (Coulomb-gas correlation length)",
                    "dp = hbar c / a_proton"};
    return r;
}

ScenarioReport parent_child_length(const ScenarioReport& parent, double v_parent,
                                   double v_child) {
    if (!(v_parent > 0.0 && v_parent <= 1.0) || !(v_child > 0.0 && v_child <= 1.0)) {
        throw std::invalid_argument("parent_child_length: velocities must be in (0, 1]");
    }
    auto r = make_length_report(parent.name + "-child",
                                parent.coherence_length_m * v_child / v_parent);
    r.provenance = parent.provenance;
    r.provenance.push_back("L_child = L_parent * v_child/v_parent");
    return r;
}

double decay_coherence_length(double tau0_s, double E, double m) {
    if (!(tau0_s > 0.0)) throw std::invalid_argument("decay length: tau0 must be > 0");
    if (!(m > 0.0) || E < m) throw std::invalid_argument("decay length: need E >= m > 0");
    return constants().c_m_per_s * tau0_s * (E / m);
}

double neutrino_velocity_deficit(double E_eV, double m_eV) {
    if (!(E_eV > 0.0) || m_eV < 0.0 || m_eV >= E_eV) {
        throw std::invalid_argument("velocity deficit: need E > m >= 0");
    }
    const double x = m_eV / E_eV;
    return 0.5 * x * x;
}

double neutrino_arrival_lag(double E_eV, double m_eV, double l0_m) {
    if (l0_m < 0.0) throw std::invalid_argument("arrival lag: baseline must be >= 0");
    return l0_m * neutrino_velocity_deficit(E_eV, m_eV);
}

ScenarioReport detector_packet_size(DetectorProcess process, const DetectorParams& params) {
    const auto& c = constants();
    ScenarioReport r;
    switch (process) {
    case DetectorProcess::atomic_inner_core:
        if (!(params.Z >= 1.0)) throw std::domain_error("inner core: Z must be >= 1");
        r = make_length_report("detector-inner-core", c.a_bohr_m / params.Z);
        r.provenance = {"L_i = a_B / Z (inner-core electron orbit)"};
        return r;
    case DetectorProcess::nucleus:
        r = make_length_report("detector-nucleus", kNucleusSize_m);
        r.provenance = {"nuclear wave-function size, catalog"};
        return r;
    case DetectorProcess::atom:
        r = make_length_report("detector-atom", kAtomSize_m);
        r.provenance = {"atomic wave-function size, catalog"};
        return r;
    case DetectorProcess::semiconductor:
        if (!(params.m_ratio > 0.0) || !(params.epsilon > 0.0)) {
            throw std::domain_error("semiconductor: need m*/m0 > 0 and eps* > 0");
        }
        r = make_length_report("detector-semiconductor",
                               c.a_bohr_m * (1.0 / params.m_ratio) * params.epsilon);
        r.provenance = {"a_B* = a_B (m0/m*) eps* (effective-mass hydrogenic orbit)"};
        return r;
    case DetectorProcess::hadronization:
        if (!(params.scale_MeV > 0.0)) throw std::domain_error("hadronization: scale must be > 0");
        r = make_length_report("detector-hadronization",
                               (c.hbar_c_mev_fm / params.scale_MeV) * 1e-15);
        r.provenance = {"confinement scale: L = hbar c / E_had"};
        return r;
    }
    throw std::domain_error("unknown detector process tag");
}

CmbReport cmb_epoch_report(double temperature_K, double n_p_m3, double photon_baryon_ratio) {
    if (!(temperature_K > 0.0) || !(n_p_m3 > 0.0) || !(photon_baryon_ratio > 0.0)) {
        throw std::invalid_argument("cmb report: inputs must be > 0");
    }
    CmbReport rep;
    rep.temperature_K = temperature_K;
    rep.n_p_m3 = n_p_m3;
    rep.photon_baryon_ratio = photon_baryon_ratio;

    const double n_e = n_p_m3;
    const double n_gamma = photon_baryon_ratio * n_p_m3;
    const double sigma_ru = ix::rutherford_thermal(temperature_K, kLogLambda).value_m2;
    const double sigma_th = ix::thomson().value_m2;
    // Rayleigh scattering off neutral hydrogen, quoted as a scaling from the
    // Lyman-alpha wavelength 1215 to the thermal wavelength 3000 (only the
    // ratio enters).
    const double ray_factor = ix::rayleigh_ratio(3000.0, 1215.0);

    auto add = [&](const char* id, const char* desc, const char* unit, double value,
                   bool anchored, double paper, ToleranceClass cls) {
        rep.lines.push_back({id, desc, unit, value, anchored, paper, cls});
    };

    add("sigma-ru-per-log", "thermal Coulomb cross section per log Lambda (m v^2 = 3 k T)",
        "m2", sigma_ru / kLogLambda, true, 4.4e-17, ToleranceClass::pct_2);
    add("sigma-th", "Thomson cross section", "m2", sigma_th, true, 0.6e-28,
        ToleranceClass::pct_15);
    add("le-ru", "electron mfp, Coulomb scattering off protons", "m",
        ix::mean_free_path(sigma_ru, n_p_m3), true, 5.7e-3, ToleranceClass::pct_15);
    // The two Thomson mean free paths disagree with the quoted values by a
    // common factor ~7.5 whose origin is not recoverable from the text; they
    // are carried as flagged rows and report their ratios.
    add("le-th", "electron mfp, Thomson scattering off photons", "m",
        ix::mean_free_path(sigma_th, n_gamma), true, 5.0,
        ToleranceClass::flagged_inconsistent);
    add("lphoton-th", "photon mfp, Thomson scattering off electrons", "m",
        ix::mean_free_path(sigma_th, n_e), true, 5e9,
        ToleranceClass::flagged_inconsistent);
    add("rayleigh-factor", "sigma(3000)/sigma(1215) = (1215/3000)^4", "",
        ray_factor, true, 0.027, ToleranceClass::pct_1);
    add("lphoton-rayleigh", "photon mfp below T_c, Rayleigh off neutral hydrogen", "m",
        ix::mean_free_path(ray_factor * sigma_th, n_p_m3), true, 0.154e13,
        ToleranceClass::pct_15);
    add("hydrogen-mfp", "hydrogen-atom mfp, sigma_H = 1e-20 m^2", "m",
        ix::mean_free_path(kHydrogenSigma_m2, n_p_m3), true, 2.5e2, ToleranceClass::pct_1);
    add("omega-p", "plasma frequency", "rad/s", ix::plasma_frequency(n_e), false, 0.0,
        ToleranceClass::exact_ratio);
    add("debye", "Debye screening length", "m", ix::debye_length(n_e, temperature_K),
        false, 0.0, ToleranceClass::exact_ratio);
    return rep;
}

std::string CmbReport::to_text() const {
    std::ostringstream os;
    os << "# recombination epoch: T = " << units::fmt_g6(temperature_K) << " K, n_p = "
       << units::fmt_g6(n_p_m3) << " m^-3, n_gamma/n_p = "
       << units::fmt_g6(photon_baryon_ratio) << "\n";
    for (const auto& line : lines) {
        os << line.id << ": " << units::fmt_g6(line.computed);
        if (*line.unit.c_str()) os << " " << line.unit;
        if (line.has_anchor) {
            AnchorRow row{line.id, "", line.unit, line.computed, line.paper_value,
                          line.cls, ""};
            os << " (quoted " << units::fmt_g6(line.paper_value) << ", ratio "
               << units::fmt_g6(row.ratio()) << ", " << to_string(line.cls) << ", "
               << row.pass() << ")";
        }
        os << "  -- " << line.description << "\n";
    }
    return os.str();
}

std::vector<AnchorRow> builtin_ledger() {
    const auto& c = constants();
    std::vector<AnchorRow> rows;
    auto add = [&rows](std::string id, std::string cite, std::string unit, double computed,
                       double paper, ToleranceClass cls, std::string note) {
        rows.push_back({std::move(id), std::move(cite), std::move(unit), computed, paper,
                        cls, std::move(note)});
    };
    using TC = ToleranceClass;

    // ---- beam-side sizes -------------------------------------------------
    const auto bunch = bunch_coherence();
    add("bunch-a-proton", "Eq. (proton_C)", "m", bunch.coherence_length_m, 2.89e-14,
        TC::pct_1, "a_proton = a_B m_e/m_p");
    add("bunch-dp-proton", "sec. 3.2.2", "eV", bunch.momentum_width_eV, 6.9e6, TC::pct_1,
        "dp = hbar c / a_proton");
    // The quoted 3.77 keV is the source's own arithmetic with hbar c = 2e-7
    // eV m and a_0 = 0.53e-10 m; CODATA inputs give 3.729 keV (1.1% off).
    add("electron-dp-atomic", "sec. 3.2.2", "eV", 2e-7 / 0.53e-10, 3.77e3, TC::pct_1,
        "hbar c / a_0 at the quoted rounded inputs; CODATA chain gives 3.729 keV");
    add("metal-electron-mfp", "sec. 3.2.2", "m", kMetalElectronMfp_m, 1e-7,
        TC::exact_ratio, "impurity-scattering relaxation length, catalog");

    // ---- Rutherford mean free paths ---------------------------------------
    // The absolute 0.1 m anchor for a 10 MeV proton is not derivable from the
    // printed cross section with any physical Fe density; an effective density
    // is calibrated at this row and the exact E^-2 ratios carry the physics.
    const double sigma_10mev = ix::rutherford(10e6, kLogLambda).value_m2;
    const double n_eff = 1.0 / (sigma_10mev * 0.1);
    auto ru_mfp = [&](double e_kin_eV) {
        return ix::mean_free_path(ix::rutherford(e_kin_eV, kLogLambda).value_m2, n_eff);
    };
    add("rutherford-10mev", "Eq. (mfp_mev)", "m", ru_mfp(10e6), 0.1, TC::exact_ratio,
        "calibration row for the effective density");
    add("rutherford-50kev", "Eq. (mfp_50)", "m", ru_mfp(50e3), 2.5e-6, TC::exact_ratio,
        "(50 keV/10 MeV)^2 of the 0.1 m anchor");
    add("rutherford-1kev", "Eq. (mfp_kev)", "m", ru_mfp(1e3), 1e-9, TC::exact_ratio,
        "(1 keV/10 MeV)^2 of the 0.1 m anchor");
    add("rutherford-1gev", "sec. 2.4.4", "m", ru_mfp(1e9), 1e3, TC::exact_ratio,
        "(1 GeV/10 MeV)^2 of the 0.1 m anchor");

    // ---- energy-loss lengths ----------------------------------------------
    add("eloss-1gev-lo", "Eq. (mfp-proton-i1)", "m", ix::energy_loss_length(1e9, 2e9), 0.5,
        TC::exact_ratio, "1 GeV at dE/dx = 2 GeV/m");
    add("eloss-1gev-hi", "Eq. (mfp-proton-i1)", "m", ix::energy_loss_length(1e9, 1e9), 1.0,
        TC::exact_ratio, "1 GeV at dE/dx = 1 GeV/m");
    add("eloss-02gev", "Eq. (mfp-proton-i_2)", "m", ix::energy_loss_length(0.2e9, 2e9),
        0.10, TC::exact_ratio, "0.2 GeV at dE/dx = 2 GeV/m");
    add("eloss-02mev", "Eq. (mfp-proton-i_2)", "m", ix::energy_loss_length(0.2e6, 2e9),
        1e-4, TC::exact_ratio, "0.2 MeV at dE/dx = 2 GeV/m");

    // ---- acceleration (velocity-ratio) rows --------------------------------
    const double v1 = relativistic_v(1000.0, c.m_p_mev);
    const double v02 = relativistic_v(200.0, c.m_p_mev);
    const double v10 = relativistic_v(10000.0, c.m_p_mev);
    add("accel-vratio-1-10", "sec. 3.2.1", "", v10 / v1, 1.2, TC::factor_2,
        "exact kinematic ratio vs the quoted 'about 1.2'");
    add("accel-vratio-02-10", "sec. 3.2.1", "", v10 / v02, 5.0, TC::pct_15,
        "exact kinematic ratio vs the quoted 'about five'");
    const double accel_gm = std::sqrt((0.5 * v10 / v1) * (1.0 * v10 / v1));
    add("accel-10gev-band", "Eq. (mfp-proton-i2)", "m", accel_gm, std::sqrt(0.40 * 1.0),
        TC::factor_2,
        "geometric mean of the scaled band [0.68, 1.37] m vs quoted [0.40, 1.0] m");

    // ---- strong interaction -------------------------------------------------
    add("strong-mfp", "Eq. (mfp_strong)", "m",
        ix::mean_free_path(ix::strong_geometric().value_m2, c.n_avogadro * 1e6), 1.5,
        TC::factor_2, "sigma = (hbar c/m_pi)^2, n = N_A per cm^3; recomputes to 0.83 m");

    // ---- pion / muon lineage ------------------------------------------------
    add("pion-relativistic", "Eq. (mfp-pion_i)", "m", accel_gm, std::sqrt(0.40 * 1.0),
        TC::factor_2, "pion inherits the accelerated-proton band");
    const auto pion_quoted = make_length_report("pion-quoted", std::sqrt(0.40 * 1.0));
    add("muon-relativistic", "Eq. (mfp-muoni)", "m",
        parent_child_length(pion_quoted, 1.0, 1.0).coherence_length_m,
        std::sqrt(0.40 * 1.0), TC::exact_ratio,
        "unity velocity ratio applied to the quoted pion band");
    add("pion-bunch", "Eq. (mfp-pion_c)", "m", bunch.coherence_length_m, 1e-14, TC::order_of_magnitude,
        "bunch lineage: pion inherits the proton Coulomb-gas length");
    const auto pion_bunch = make_length_report("pion-bunch", bunch.coherence_length_m);
    add("muon-bunch", "Eq. (mfp-muon_c)", "m",
        parent_child_length(pion_bunch, 1.0, 1.0).coherence_length_m, 1e-16,
        TC::flagged_inconsistent,
        "quoted 1e-16 m contradicts the unity velocity ratio stated two lines earlier");

    // ---- decay lengths --------------------------------------------------------
    add("pion-decay-rest", "sec. 3.5.2", "m", decay_coherence_length(c.tau_pi_s, 1.0, 1.0),
        30.0, TC::order_of_magnitude, "c tau at the measured lifetime vs quoted 3x10 m");
    add("neutron-decay", "sec. 3.5.2", "m", decay_coherence_length(900.0, 1.0, 1.0),
        2.7e10, TC::flagged_inconsistent,
        "the quoted line's own arithmetic 3e8 x 15 x 60 gives 2.7e11 m");

    // ---- neutrino rows ----------------------------------------------------------
    add("neutrino-eps", "sec. 4.4", "", neutrino_velocity_deficit(1e9, 0.1), 5e-21,
        TC::pct_1, "eps = (1/2)(m/E)^2 at m = 0.1 eV, E = 1 GeV");
    add("neutrino-lag-100m", "sec. 4.4", "m", neutrino_arrival_lag(1e9, 0.1, 100.0), 5e-19,
        TC::pct_1, "delta l = l0 eps");
    add("neutrino-lag-1000m", "sec. 4.4", "m", neutrino_arrival_lag(1e9, 0.1, 1000.0),
        5e-18, TC::pct_1, "delta l = l0 eps");
    add("solar-source-lo", "sec. 3.5.1", "m", kSolarSourceLo_m, 1e-10, TC::exact_ratio,
        "solar-neutrino source-size range, catalog");
    add("solar-source-hi", "sec. 3.5.1", "m", kSolarSourceHi_m, 1e-6, TC::exact_ratio,
        "solar-neutrino source-size range, catalog");
    add("supernova-core", "sec. 3.5.1", "m", kSupernovaCore_m, 1e-16, TC::exact_ratio,
        "supernova core source size, catalog");
    add("supernova-surface", "sec. 3.5.1", "m", kSupernovaSurface_m, 1e-11,
        TC::exact_ratio, "supernova surface source size, catalog");
    add("nucleus-size", "sec. 3.3.1", "m", kNucleusSize_m, 1e-15, TC::exact_ratio,
        "nuclear wave-function size, catalog");

    // ---- detector-side sizes -------------------------------------------------------
    add("detector-inner-core", "Eq. (mfp_finalp)", "m",
        detector_packet_size(DetectorProcess::atomic_inner_core, {.Z = 50.0})
            .coherence_length_m,
        0.529e-10 / 50.0, TC::pct_1, "L_i = a_B/50");
    add("detector-nucleus", "sec. 4.2", "m",
        detector_packet_size(DetectorProcess::nucleus).coherence_length_m, 1e-15,
        TC::exact_ratio, "strong-interaction detection unit");
    add("detector-atom", "sec. 4.2", "m",
        detector_packet_size(DetectorProcess::atom).coherence_length_m, 1e-10,
        TC::exact_ratio, "atomic detection unit");
    add("neutrino-on-electron", "Eq. (mfp-neutrino-e)", "m", kAtomSize_m, 1e-10,
        TC::exact_ratio, "leptonic neutrino detection");
    add("neutrino-on-nucleus", "Eq. (mfp-neutrino-N)", "m", kNucleusSize_m, 1e-15,
        TC::exact_ratio, "hadronic neutrino detection");
    add("nai-dp", "sec. 4.6", "eV", ix::momentum_width_eV(2.06e-10), 1e3, TC::pct_15,
        "iodine ion size 2.06e-10 m");
    const auto ge = detector_packet_size(DetectorProcess::semiconductor,
                                         {.m_ratio = 0.08, .epsilon = 16.0});
    add("ge-enhancement", "sec. 4.6", "", ge.coherence_length_m / c.a_bohr_m, 200.0,
        TC::pct_2, "a_B*/a_B = (m0/m*) eps*");
    add("ge-abs-size", "sec. 4.6", "m", ge.coherence_length_m, 1e-8, TC::pct_15,
        "quoted 100e-10 m");
    add("ge-dp", "sec. 4.6", "eV", ge.momentum_width_eV, 20.0, TC::pct_15,
        "quoted 0.02 keV");
    const auto jet = detector_packet_size(DetectorProcess::hadronization,
                                          {.scale_MeV = 1000.0});
    add("jet-hadronization", "sec. 4.8", "m", jet.coherence_length_m,
        jet.coherence_length_m, TC::exact_ratio,
        "confinement scale 1/(500-1000 MeV); formula-only anchor, recorded at 1000 MeV");
    add("jet-energy-width", "sec. 4.8", "eV", std::sqrt(200e6 * 400e6),
        std::sqrt(200e6 * 400e6), TC::exact_ratio,
        "'few hundred MeV' stored as the [200, 400] MeV band; geometric mean");
    add("positron-parent", "sec. 3.6", "m", kNucleusSize_m, 1e-15, TC::exact_ratio,
        "positron inherits the parent nuclear size");

    // ---- recombination epoch ------------------------------------------------------
    for (const auto& line : cmb_epoch_report(3000.0, 4e17, 1e9).lines) {
        if (!line.has_anchor) continue;
        add("cmb-" + line.id, "sec. 5.5.5", line.unit, line.computed, line.paper_value,
            line.cls, line.description);
    }
    return rows;
}

namespace {

std::vector<std::string> csv_header() {
    return {"scenario",  "coherence_length_m", "sigma_m2", "momentum_width_eV",
            "anchor_id", "paper_value",        "ratio",    "tolerance_class",
            "pass"};
}

std::string anchor_csv_row(const std::string& name, const ScenarioReport* rep,
                           const AnchorRow* anchor) {
    std::vector<std::string> f(9);
    f[0] = name;
    if (rep && rep->coherence_length_m > 0.0) {
        f[1] = units::fmt_g6(rep->coherence_length_m);
        f[2] = units::fmt_g6(rep->sigma_m2);
        f[3] = units::fmt_g6(rep->momentum_width_eV);
    }
    if (anchor) {
        f[4] = anchor->id;
        f[5] = units::fmt_g6(anchor->paper_value);
        f[6] = units::fmt_g6(anchor->ratio());
        f[7] = to_string(anchor->cls);
        f[8] = anchor->pass();
    }
    return units::csv_join(f);
}

} // namespace

std::string ledger_csv(const std::vector<AnchorRow>& rows) {
    std::ostringstream os;
    os << units::csv_join(csv_header()) << "\n";
    const double hbar_c = constants().hbar_c_ev_m;
    for (const auto& row : rows) {
        ScenarioReport rep;
        rep.name = row.id;
        if (row.unit == "m") {
            rep = make_length_report(row.id, row.computed);
        } else if (row.unit == "eV") {
            rep = make_length_report(row.id, hbar_c / row.computed);
        }
        os << anchor_csv_row(row.id, &rep, &row) << "\n";
    }
    return os.str();
}

std::string reports_csv(const std::vector<ScenarioReport>& reports) {
    std::ostringstream os;
    os << units::csv_join(csv_header()) << "\n";
    for (const auto& rep : reports) {
        os << anchor_csv_row(rep.name, &rep, rep.anchor ? &*rep.anchor : nullptr) << "\n";
    }
    return os.str();
}

bool all_pass(const std::vector<ScenarioReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const ScenarioReport& r) {
        return !r.anchor || r.anchor->ok();
    });
}

// ---------------------------------------------------------------------------
// Scenario file parsing and evaluation
// ---------------------------------------------------------------------------
namespace {

struct KeyValue {
    int line = 0;
    std::string value;
    bool used = false;
};

struct RawSection {
    std::string kind; // "scenario" or "medium"
    std::string name;
    int line = 0;
    std::map<std::string, KeyValue> kv;
    std::vector<std::string> order; // key order for diagnostics
};

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ScenarioError("scenario file, line " + std::to_string(line) + ": " + msg);
}

[[noreturn]] void fail_in(const std::string& scenario, const std::string& msg) {
    throw ScenarioError("scenario '" + scenario + "': " + msg);
}

std::vector<RawSection> parse_sections(const std::string& text) {
    std::vector<RawSection> sections;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(lineno, "unterminated section header");
            std::istringstream hs(line.substr(1, line.size() - 2));
            std::string kind, name;
            hs >> kind >> name;
            std::string extra;
            if (hs >> extra) fail(lineno, "section header has trailing tokens");
            if (kind != "scenario" && kind != "medium") {
                fail(lineno, "unknown section kind '" + kind + "'");
            }
            if (name.empty()) fail(lineno, "section needs a name");
            sections.push_back({kind, name, lineno, {}, {}});
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
        if (sections.empty()) fail(lineno, "key outside any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) fail(lineno, "empty key or value");
        auto& sec = sections.back();
        if (sec.kv.count(key)) fail(lineno, "duplicate key '" + key + "'");
        sec.kv[key] = {lineno, value, false};
        sec.order.push_back(key);
    }
    return sections;
}

class SectionView {
  public:
    explicit SectionView(RawSection& sec) : sec_(sec) {}

    const std::string& name() const { return sec_.name; }

    bool has(const std::string& key) const { return sec_.kv.count(key) != 0; }

    std::string text(const std::string& key) {
        auto it = sec_.kv.find(key);
        if (it == sec_.kv.end()) fail_in(sec_.name, "missing required key '" + key + "'");
        it->second.used = true;
        return it->second.value;
    }

    std::optional<std::string> text_opt(const std::string& key) {
        auto it = sec_.kv.find(key);
        if (it == sec_.kv.end()) return std::nullopt;
        it->second.used = true;
        return it->second.value;
    }

    double number(const std::string& key, units::Dim dim, const char* default_unit) {
        auto it = sec_.kv.find(key);
        if (it == sec_.kv.end()) fail_in(sec_.name, "missing required key '" + key + "'");
        it->second.used = true;
        try {
            return units::parse(it->second.value, dim, default_unit);
        } catch (const units::UnitError& e) {
            fail(it->second.line, std::string("key '") + key + "': " + e.what());
        }
    }

    std::optional<double> number_opt(const std::string& key, units::Dim dim,
                                     const char* default_unit) {
        if (!has(key)) return std::nullopt;
        return number(key, dim, default_unit);
    }

    void reject_unused() const {
        for (const auto& key : sec_.order) {
            const auto& kv = sec_.kv.at(key);
            if (!kv.used) fail(kv.line, "unknown key '" + key + "' in this section");
        }
    }

  private:
    RawSection& sec_;
};

double particle_mass_mev(Particle p, const std::string& scenario) {
    switch (p) {
    case Particle::proton: return constants().m_p_mev;
    case Particle::pion: return constants().m_pi_mev;
    case Particle::muon: return 105.6583755;
    case Particle::neutron: return 939.56542052;
    case Particle::electron:
    case Particle::positron: return constants().m_e_mev;
    default: break;
    }
    fail_in(scenario, std::string("no catalog mass for particle '") + to_string(p) +
                          "'; give an explicit 'mass' key");
}

bool mechanism_compatible(Particle p, Stage s, Mechanism m) {
    auto in = [p](std::initializer_list<Particle> list) {
        return std::find(list.begin(), list.end(), p) != list.end();
    };
    switch (m) {
    case Mechanism::rutherford:
        return in({Particle::proton, Particle::pion, Particle::muon, Particle::electron,
                   Particle::positron});
    case Mechanism::energy_loss:
        return in({Particle::proton, Particle::pion, Particle::muon, Particle::electron,
                   Particle::positron, Particle::neutron});
    case Mechanism::strong_geometric:
        return in({Particle::proton, Particle::pion, Particle::neutron});
    case Mechanism::bound_state:
        return true;
    case Mechanism::coulomb_gas:
        return in({Particle::proton, Particle::electron}) && s == Stage::initial;
    case Mechanism::parent_decay:
        return in({Particle::muon, Particle::neutrino});
    case Mechanism::detector_unit:
        return s == Stage::final_state;
    case Mechanism::decay_length:
        return in({Particle::pion, Particle::muon, Particle::neutron, Particle::neutrino});
    case Mechanism::arrival_lag:
        return p == Particle::neutrino;
    case Mechanism::cmb_epoch:
        return in({Particle::photon, Particle::electron, Particle::proton, Particle::atom});
    }
    return false;
}

const AnchorRow& find_anchor(const std::vector<AnchorRow>& ledger, const std::string& id,
                             const std::string& scenario) {
    for (const auto& row : ledger) {
        if (row.id == id) return row;
    }
    fail_in(scenario, "unknown anchor id '" + id + "'");
}

const ix::Medium& find_medium(const std::map<std::string, ix::Medium>& media,
                              const std::string& name, const std::string& scenario) {
    auto it = media.find(name);
    if (it == media.end()) fail_in(scenario, "unknown medium '" + name + "'");
    return it->second;
}

ScenarioReport evaluate_scenario(SectionView& sec,
                                 const std::map<std::string, ix::Medium>& media,
                                 const std::vector<AnchorRow>& ledger) {
    const std::string name = sec.name();
    const std::string particle_txt = sec.text("particle");
    const auto particle = parse_particle(particle_txt);
    if (!particle) fail_in(name, "unknown particle '" + particle_txt + "'");

    Stage stage = Stage::initial;
    if (auto st = sec.text_opt("stage")) {
        const auto parsed = parse_stage(*st);
        if (!parsed) fail_in(name, "unknown stage '" + *st + "'");
        stage = *parsed;
    }

    const std::string mech_txt = sec.text("mechanism");
    const auto mech = parse_mechanism(mech_txt);
    if (!mech) fail_in(name, "unknown mechanism '" + mech_txt + "'");
    if (!mechanism_compatible(*particle, stage, *mech)) {
        fail_in(name, std::string("mechanism '") + to_string(*mech) +
                          "' is not compatible with particle '" + to_string(*particle) +
                          "' at stage '" + to_string(stage) + "'");
    }

    auto medium_for = [&]() -> const ix::Medium& {
        return find_medium(media, sec.text("medium"), name);
    };

    ScenarioReport rep;
    double raw_value = 0.0; // non-length scalar for dimensionless anchors
    std::string raw_unit;

    switch (*mech) {
    case Mechanism::rutherford: {
        const double e_kin = sec.number("energy", units::Dim::energy, nullptr);
        const double log_lambda =
            sec.number_opt("logLambda", units::Dim::dimensionless, "").value_or(kLogLambda);
        const double zf =
            sec.number_opt("charge_factor", units::Dim::dimensionless, "").value_or(1.0);
        const auto& med = medium_for();
        const auto xs = ix::rutherford(e_kin, log_lambda, zf);
        rep = make_length_report(name, ix::mean_free_path(xs, med));
        rep.provenance = {"sigma_Ru = 4 pi (Z alpha hbar c / (2 E_kin))^2 log Lambda",
                          "L = 1/(sigma n)"};
        break;
    }
    case Mechanism::energy_loss: {
        const double e = sec.number("energy", units::Dim::energy, nullptr);
        const auto& med = medium_for();
        if (!(med.dEdx_eV_per_m > 0.0)) fail_in(name, "medium has no dEdx");
        rep = make_length_report(name, ix::energy_loss_length(e, med.dEdx_eV_per_m));
        rep.provenance = {"L = E/(dE/dx)"};
        break;
    }
    case Mechanism::strong_geometric: {
        const auto& med = medium_for();
        rep = make_length_report(
            name, ix::mean_free_path(ix::strong_geometric().value_m2,
                                     med.number_density_m3));
        rep.provenance = {"sigma = (hbar c/m_pi)^2", "L = 1/(sigma n)"};
        break;
    }
    case Mechanism::bound_state: {
        rep = make_length_report(name, sec.number("size", units::Dim::length, nullptr));
        rep.provenance = {"bound-state wave-function size (catalog)"};
        break;
    }
    case Mechanism::coulomb_gas: {
        if (*particle == Particle::proton) {
            rep = bunch_coherence();
        } else {
            rep = make_length_report(name, constants().a_bohr_m);
            rep.provenance = {"electron Coulomb-gas correlation length ~ a_B"};
        }
        rep.name = name;
        break;
    }
    case Mechanism::parent_decay: {
        const double parent_l = sec.number("parent_length", units::Dim::length, nullptr);
        const double c_ms = constants().c_m_per_s;
        const double vp =
            sec.number_opt("v_parent", units::Dim::velocity, "c").value_or(c_ms) / c_ms;
        const double vc =
            sec.number_opt("v_child", units::Dim::velocity, "c").value_or(c_ms) / c_ms;
        auto parent = make_length_report(name + "-parent", parent_l);
        try {
            rep = parent_child_length(parent, vp, vc);
        } catch (const std::invalid_argument& e) {
            fail_in(name, e.what());
        }
        rep.name = name;
        break;
    }
    case Mechanism::detector_unit: {
        const std::string proc = sec.text("process");
        DetectorParams params;
        DetectorProcess dp;
        if (proc == "inner_core") {
            dp = DetectorProcess::atomic_inner_core;
            params.Z = sec.number_opt("Z", units::Dim::dimensionless, "").value_or(50.0);
        } else if (proc == "nucleus") {
            dp = DetectorProcess::nucleus;
        } else if (proc == "atom") {
            dp = DetectorProcess::atom;
        } else if (proc == "semiconductor") {
            dp = DetectorProcess::semiconductor;
            params.m_ratio =
                sec.number_opt("m_ratio", units::Dim::dimensionless, "").value_or(0.08);
            params.epsilon =
                sec.number_opt("epsilon", units::Dim::dimensionless, "").value_or(16.0);
        } else if (proc == "hadronization") {
            dp = DetectorProcess::hadronization;
            params.scale_MeV =
                sec.number_opt("scale", units::Dim::energy, "MeV").value_or(1e9) * 1e-6;
        } else {
            fail_in(name, "unknown detector process '" + proc + "'");
        }
        try {
            rep = detector_packet_size(dp, params);
        } catch (const std::domain_error& e) {
            fail_in(name, e.what());
        }
        rep.name = name;
        break;
    }
    case Mechanism::decay_length: {
        const double tau = sec.number("lifetime", units::Dim::time, nullptr);
        double mass_mev;
        if (auto m = sec.number_opt("mass", units::Dim::energy, nullptr)) {
            mass_mev = *m * 1e-6;
        } else {
            mass_mev = particle_mass_mev(*particle, name);
        }
        double e_mev = mass_mev; // default: decay at rest
        if (auto e = sec.number_opt("energy", units::Dim::energy, nullptr)) {
            e_mev = *e * 1e-6;
        }
        try {
            rep = make_length_report(name, decay_coherence_length(tau, e_mev, mass_mev));
        } catch (const std::invalid_argument& e) {
            fail_in(name, e.what());
        }
        rep.provenance = {"L = c tau0 E/m"};
        break;
    }
    case Mechanism::arrival_lag: {
        const double e = sec.number("energy", units::Dim::energy, nullptr);
        const double m = sec.number("mass", units::Dim::energy, nullptr);
        const double l0 = sec.number("baseline", units::Dim::length, nullptr);
        try {
            rep = make_length_report(name, neutrino_arrival_lag(e, m, l0));
        } catch (const std::invalid_argument& e2) {
            fail_in(name, e2.what());
        }
        rep.provenance = {"delta l = l0 (1/2)(m/E)^2"};
        break;
    }
    case Mechanism::cmb_epoch: {
        const auto& med = medium_for();
        if (!(med.temperature_K > 0.0)) fail_in(name, "medium has no temperature");
        const double ratio = sec.number_opt("photon_baryon", units::Dim::dimensionless, "")
                                 .value_or(1e9);
        const std::string quantity = sec.text("quantity");
        const auto cmb = cmb_epoch_report(med.temperature_K, med.number_density_m3, ratio);
        const CmbLine* found = nullptr;
        for (const auto& line : cmb.lines) {
            if (line.id == quantity) found = &line;
        }
        if (!found) fail_in(name, "unknown cmb quantity '" + quantity + "'");
        if (found->unit == "m") {
            rep = make_length_report(name, found->computed);
        } else {
            rep.name = name;
            raw_value = found->computed;
            raw_unit = found->unit;
        }
        rep.provenance = {found->description};
        break;
    }
    }

    if (auto anchor_id = sec.text_opt("anchor")) {
        AnchorRow row = find_anchor(ledger, *anchor_id, name);
        if (row.unit == "m") {
            if (!(rep.coherence_length_m > 0.0)) {
                fail_in(name, "anchor '" + *anchor_id + "' expects a length result");
            }
            row.computed = rep.coherence_length_m;
        } else if (row.unit == "eV") {
            if (!(rep.momentum_width_eV > 0.0)) {
                fail_in(name, "anchor '" + *anchor_id + "' expects a momentum result");
            }
            row.computed = rep.momentum_width_eV;
        } else {
            if (rep.coherence_length_m > 0.0 || raw_unit != row.unit) {
                fail_in(name, "anchor '" + *anchor_id + "' expects unit '" + row.unit + "'");
            }
            row.computed = raw_value;
        }
        rep.anchor = std::move(row);
    }
    sec.reject_unused();
    return rep;
}

} // namespace

std::vector<ScenarioReport> run_scenario_text(const std::string& text) {
    auto sections = parse_sections(text);
    std::map<std::string, ix::Medium> media;
    for (auto& sec : sections) {
        if (sec.kind != "medium") continue;
        SectionView view(sec);
        ix::Medium med;
        med.label = sec.name;
        med.number_density_m3 = view.number("density", units::Dim::inv_volume, nullptr);
        med.temperature_K =
            view.number_opt("temperature", units::Dim::temperature, nullptr).value_or(0.0);
        med.dEdx_eV_per_m =
            view.number_opt("dEdx", units::Dim::energy_per_length, nullptr).value_or(0.0);
        view.reject_unused();
        if (media.count(sec.name)) fail(sec.line, "duplicate medium '" + sec.name + "'");
        media[sec.name] = std::move(med);
    }
    const auto ledger = builtin_ledger();
    std::vector<ScenarioReport> reports;
    for (auto& sec : sections) {
        if (sec.kind != "scenario") continue;
        SectionView view(sec);
        reports.push_back(evaluate_scenario(view, media, ledger));
    }
    return reports;
}

std::vector<ScenarioReport> run_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return run_scenario_text(ss.str());
}

} // namespace wavepack::scen
