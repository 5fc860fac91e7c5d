#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "vsgsim/metrics.hpp"
#include "vsgsim/sim_engine.hpp"

namespace vsgsim {

/// One grid variant inside a multi-grid comparison scenario.
struct SweepEntry {
    std::string label;
    double r_g_ohm = 0.0;
    double l_g_henry = 0.0;
};

/// A scenario file plus the optional comparison sweep it carries.
struct ScenarioFile {
    Scenario scenario;
    std::vector<SweepEntry> sweep; // empty: compare the scenario itself
};

/// Parse JSON text. Unknown keys are rejected with their dotted path;
/// omitted tuning fields fall back to the nominal defaults. `origin` labels
/// diagnostics (file name or bundled scenario name).
ScenarioFile scenario_from_json(const std::string& text, const std::string& origin);

/// Canonical serialized form; parsing it back reproduces the scenario.
std::string scenario_to_json(const ScenarioFile& file);

/// Nominal bench configuration: 220 V / 20 kW VSG behind a 1.25 ohm, 4 mH
/// tie, decoupler off, 10 s horizon.
ScenarioFile default_scenario();

/// Built-in scenario library, keyed by name.
const std::map<std::string, std::string>& bundled_scenarios();

/// Resolve a bundled name first, then fall back to the filesystem. Throws
/// ConfigError when neither resolves or the content is invalid.
ScenarioFile load_scenario(const std::string& path_or_name);

/// Trajectory CSV. Header:
///   t,p_e,q_e,p_grid,q_grid,omega,e_r,theta_r,j,d,k_q
/// one row per sample at full double precision. Aborted runs append a
/// trailing "# aborted: <reason> t=<time>" comment line.
void write_trajectory_csv(const RunResult& run, std::ostream& out);

/// Comparison CSV over one or more grid rows. Header:
///   scenario,r_g,l_g,r_over_x,delta_base_rad,delta_dec_rad,q_e_ss_base,
///   q_e_ss_dec,p_gain_percent
/// Unsettled rows print nan fields and append a "# not_settled: <label>"
/// comment line.
void write_comparison_csv(const std::vector<ComparisonRow>& rows,
                          std::ostream& out);

/// Sweep CSV: comparison columns prefixed by the swept parameter, its value,
/// and the resulting short-circuit ratio.
void write_sweep_csv(const std::string& parameter,
                     const std::vector<double>& values,
                     const std::vector<ComparisonRow>& rows, std::ostream& out);

/// Numeric scenario fields addressable by `sweep --param`. Maps a dotted
/// path ("grid.l_g_henry") to a setter.
bool apply_scenario_parameter(Scenario& scenario, const std::string& path,
                              double value);
std::vector<std::string> sweepable_parameters();

} // namespace vsgsim
