#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vsgsim/fuzzy.hpp"
#include "vsgsim/power_flow.hpp"
#include "vsgsim/vsg_control.hpp"

namespace vsgsim {

enum class EventKind {
    set_p_m,            // retarget the active power reference
    set_local_load,     // connect/resize the PCC load (resized at e_0)
    set_grid_impedance, // swap r_g and l_g; derived quantities refresh
};

struct Event {
    double t_s = 0.0;
    EventKind kind = EventKind::set_p_m;
    double value_a = 0.0; // p_m_w | local_load_w | r_g_ohm
    double value_b = 0.0; // l_g_henry for impedance events
};

enum class InitMode {
    cold,         // omega_0, theta 0, e_0, empty filters
    steady_state, // start on the solved operating point
};

/// Complete description of one run. Everything a run needs is value state
/// here, so identical scenarios give bit-identical results.
struct Scenario {
    std::string label = "scenario";

    // grid tie
    double v_g_v = 220.0;
    double r_g_ohm = 1.25;
    double l_g_henry = 4e-3;
    double omega_g_rad_s = 314.0;
    double local_load_w = 0.0;

    VsgParams vsg;
    FuzzyConfig fuzzy;

    // integration
    double dt_s = 1e-4;
    double duration_s = 10.0;
    std::int64_t record_stride = 100;
    InitMode init = InitMode::cold;

    std::vector<Event> events; // applied in listed order at equal times

    /// Throws ConfigError on out-of-range values, an unstable filter
    /// discretization (cutoff * dt >= 1), or invalid events.
    void validate() const;
};

/// One recorded row. Powers are re-evaluated at the recorded state; j/d/k_q
/// are the control constants installed at that instant.
struct TrajectorySample {
    double t = 0.0;
    double p_e = 0.0;
    double q_e = 0.0;
    double p_grid = 0.0;
    double q_grid = 0.0;
    double omega = 0.0;
    double e_r = 0.0;
    double theta_r = 0.0;
    double j = 0.0;
    double d = 0.0;
    double k_q = 0.0;
};

enum class RunStatus { completed, aborted };

struct RunResult {
    RunStatus status = RunStatus::completed;
    std::string abort_reason; // "loss of synchronism" on synchronism aborts
    double abort_t_s = 0.0;
    std::vector<TrajectorySample> trajectory;
    std::int64_t droop_clamp_count = 0;
};

/// Fixed-step forward-Euler integrator. Per step, in order: apply events due
/// at the current time (first step whose time, evaluated as k * dt, reaches
/// the event time; listed order for ties), evaluate the power flow at the
/// held state, advance the VSG control with the raw powers, then let the
/// fuzzy controller retune (j, d, k_q) from the filtered reactive power for
/// the next step.
class Simulation {
public:
    explicit Simulation(const Scenario& scenario);

    /// Advance one dt. Returns false once the run has aborted.
    bool step();

    /// Run the whole horizon, recording every record_stride-th step plus the
    /// initial state: floor(steps / stride) + 1 rows when not aborted.
    RunResult run();

    double time_s() const { return t_; }
    const VsgState& state() const { return state_; }
    const VsgParams& active_params() const { return params_; }
    const NetworkConfig& network() const { return network_; }
    bool aborted() const { return aborted_; }

private:
    void apply_due_events();

    Scenario scenario_;
    NetworkConfig network_;
    VsgParams params_; // j/d/k_q may be retuned each step
    FuzzyController controller_;
    VsgState state_;
    AdaptedParams lagged_{}; // holds the optional output lag state
    double t_ = 0.0;
    std::int64_t step_index_ = 0;
    std::size_t next_event_ = 0;
    bool aborted_ = false;
    double abort_t_ = 0.0;
    std::int64_t clamp_count_ = 0;
};

RunResult run_scenario(const Scenario& scenario);

struct RunPair {
    RunResult baseline;  // decoupler forced off
    RunResult decoupled; // decoupler forced on
};

/// Same scenario with the fuzzy controller forced off and on. Runs execute
/// sequentially; results are deterministic.
RunPair run_pair(Scenario scenario);

} // namespace vsgsim
