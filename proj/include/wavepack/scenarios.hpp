#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavepack/interactions.hpp"

// Catalog of coherence-length estimates: beam-side sizes per particle species,
// detector-side sizes per detection unit, the recombination-epoch report, and
// a declarative scenario-file evaluator. Every numeric estimate is bound to an
// anchor row carrying the quoted literature value, a tolerance class, and a
// computed/quoted ratio; rows whose quoted values are internally inconsistent
// are carried as flagged and report their ratio instead of a pass/fail.
namespace wavepack::scen {

enum class Particle {
    proton,
    pion,
    muon,
    neutrino,
    electron,
    positron,
    photon,
    neutron,
    quark_jet,
    atom,
};

enum class Stage { initial, final_state, natural };

enum class Mechanism {
    rutherford,
    energy_loss,
    strong_geometric,
    bound_state,
    coulomb_gas,
    parent_decay,
    detector_unit,
    decay_length,
    arrival_lag, // neutrino velocity-deficit lag
    cmb_epoch,   // recombination-epoch mean free paths
};

enum class ToleranceClass {
    exact_ratio,          // |ratio - 1| <= 1e-12
    pct_1,                // within 1%
    pct_2,                // within 2%
    pct_15,               // within 15%
    factor_2,             // ratio in [1/2, 2]
    order_of_magnitude,   // ratio in [1/10, 10]
    flagged_inconsistent, // quoted value inconsistent; report ratio only
};

const char* to_string(ToleranceClass cls);
const char* to_string(Particle p);
const char* to_string(Stage s);
const char* to_string(Mechanism m);

std::optional<Particle> parse_particle(const std::string& s);
std::optional<Stage> parse_stage(const std::string& s);
std::optional<Mechanism> parse_mechanism(const std::string& s);

// One row of the anchor ledger: a computed value bound to a quoted one.
struct AnchorRow {
    std::string id;
    std::string citation; // section / equation label in the source literature
    std::string unit;     // "m", "eV", "m2", or "" for dimensionless ratios
    double computed = 0.0;
    double paper_value = 0.0;
    ToleranceClass cls = ToleranceClass::exact_ratio;
    std::string note;

    double ratio() const { return computed / paper_value; }
    // "yes" / "no" for checked classes, "flagged" for inconsistent rows.
    std::string pass() const;
    bool ok() const; // true for passing rows and for flagged rows (reported)
};

struct ScenarioReport {
    std::string name;
    // Length rows populate all three, tied by construction:
    // momentum_width_eV * coherence_length_m == hbar c exactly.
    double coherence_length_m = 0.0;
    double sigma_m2 = 0.0;
    double momentum_width_eV = 0.0;
    std::vector<std::string> provenance; // human-readable formula chain
    std::optional<AnchorRow> anchor;
};

// Length-report constructor enforcing the width-length tie.
ScenarioReport make_length_report(const std::string& name, double length_m);

// Coulomb-gas coherence of a beam-bunch proton: a_proton = a_B m_e / m_p.
ScenarioReport bunch_coherence();

// Child coherence from a decaying parent: L_child = L_parent * v_child/v_parent.
// Velocities in units of c, in (0, 1].
ScenarioReport parent_child_length(const ScenarioReport& parent, double v_parent,
                                   double v_child);

// Decay coherence length L = c tau0 E/m (E, m in the same unit).
double decay_coherence_length(double tau0_s, double E, double m);

// Velocity deficit of a massive neutrino: eps = (1/2)(m/E)^2, and the arrival
// lag over a baseline, delta_l = l0 * eps.
double neutrino_velocity_deficit(double E_eV, double m_eV);
double neutrino_arrival_lag(double E_eV, double m_eV, double l0_m);

enum class DetectorProcess {
    atomic_inner_core, // a_B / Z
    nucleus,           // 1e-15 m
    atom,              // 1e-10 m
    semiconductor,     // a_B * (m0/m*) * eps*
    hadronization,     // hbar c / E_confinement
};

struct DetectorParams {
    double Z = 50.0;         // atomic_inner_core
    double m_ratio = 0.08;   // semiconductor m*/m0
    double epsilon = 16.0;   // semiconductor dielectric constant
    double scale_MeV = 1000; // hadronization confinement scale
};

ScenarioReport detector_packet_size(DetectorProcess process,
                                    const DetectorParams& params = {});

// Recombination-epoch report: Coulomb and Thomson cross sections, electron and
// photon mean free paths above/below the critical temperature, plasma
// frequency, and Debye length. Pure function of its inputs; byte-identical
// text on repeated calls.
struct CmbLine {
    std::string id;
    std::string description;
    std::string unit;
    double computed = 0.0;
    bool has_anchor = false;
    double paper_value = 0.0;
    ToleranceClass cls = ToleranceClass::exact_ratio;
};

struct CmbReport {
    double temperature_K = 0.0;
    double n_p_m3 = 0.0;
    double photon_baryon_ratio = 0.0;
    std::vector<CmbLine> lines;
    std::string to_text() const;
};

CmbReport cmb_epoch_report(double temperature_K, double n_p_m3,
                           double photon_baryon_ratio);

// The full anchor ledger reproducing every quoted coherence-length estimate.
std::vector<AnchorRow> builtin_ledger();
std::string ledger_csv(const std::vector<AnchorRow>& rows);

// Scenario file evaluation. Line-oriented key-value format:
//   [medium iron]
//   density = 8.5e28 m^-3
//   dEdx = 2 GeV/m
//   [scenario proton-1gev]
//   particle = proton
//   stage = initial
//   energy = 1 GeV
//   medium = iron
//   mechanism = energy_loss
//   anchor = eloss-1gev-lo
// Reports are emitted in input order. Parse errors cite line numbers;
// mechanism/particle incompatibilities cite the scenario name.
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<ScenarioReport> run_scenario_file(const std::string& path);
std::vector<ScenarioReport> run_scenario_text(const std::string& text);

// CSV with columns (scenario, coherence_length_m, sigma_m2, momentum_width_eV,
// anchor_id, paper_value, ratio, tolerance_class, pass); non-length rows leave
// the length columns empty.
std::string reports_csv(const std::vector<ScenarioReport>& reports);

// True iff every anchored row passes (flagged rows count as reported, not
// failed).
bool all_pass(const std::vector<ScenarioReport>& reports);

} // namespace wavepack::scen
