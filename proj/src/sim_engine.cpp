#include "vsgsim/sim_engine.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vsgsim/errors.hpp"

namespace vsgsim {

namespace {

Scenario validated(Scenario scenario) {
    scenario.validate();
    return scenario;
}

} // namespace

void Scenario::validate() const {
    if (!(v_g_v > 0.0)) {
        throw ConfigError("v_g_v", "infinite-bus voltage must be > 0");
    }
    if (!(r_g_ohm >= 0.0)) {
        throw ConfigError("r_g_ohm", "grid resistance must be >= 0");
    }
    if (!(l_g_henry > 0.0)) {
        throw ConfigError("l_g_henry", "grid inductance must be > 0");
    }
    if (!(omega_g_rad_s > 0.0)) {
        throw ConfigError("omega_g_rad_s", "grid frequency must be > 0");
    }
    if (!(local_load_w >= 0.0)) {
        throw ConfigError("local_load_w", "load rating must be >= 0");
    }
    if (!(vsg.j_w_s2_per_rad > 0.0)) {
        throw ConfigError("vsg.j_w_s2_per_rad", "inertia must be > 0");
    }
    if (!(vsg.d_w_s_per_rad >= 0.0)) {
        throw ConfigError("vsg.d_w_s_per_rad", "damping must be >= 0");
    }
    if (!(vsg.k_q_v_per_var >= 0.0)) {
        throw ConfigError("vsg.k_q_v_per_var", "droop gain must be >= 0");
    }
    if (!std::isfinite(vsg.p_m_w)) {
        throw ConfigError("vsg.p_m_w", "reference must be finite");
    }
    if (!std::isfinite(vsg.q_m_var)) {
        throw ConfigError("vsg.q_m_var", "reference must be finite");
    }
    if (!(vsg.e_0_v > 0.0)) {
        throw ConfigError("vsg.e_0_v", "no-load voltage must be > 0");
    }
    if (!(vsg.omega_0_rad_s > 0.0)) {
        throw ConfigError("vsg.omega_0_rad_s", "nominal frequency must be > 0");
    }
    if (!(dt_s > 0.0)) {
        throw ConfigError("dt_s", "step size must be > 0");
    }
    if (!(duration_s >= dt_s)) {
        throw ConfigError("duration_s", "must cover at least one step");
    }
    if (record_stride < 1) {
        throw ConfigError("record_stride", "must be >= 1");
    }
    if (!(vsg.filter_cutoff_rad_s > 0.0) ||
        !(vsg.filter_cutoff_rad_s * dt_s < 1.0)) {
        throw ConfigError("vsg.filter_cutoff_rad_s",
                          "filter_cutoff_rad_s * dt_s must lie in (0, 1) for "
                          "a stable discretization");
    }
    fuzzy.validate("fuzzy");
    if (!(fuzzy.output_lag_cutoff_rad_s * dt_s < 1.0)) {
        throw ConfigError("fuzzy.output_lag_cutoff_rad_s",
                          "lag cutoff * dt_s must stay below 1");
    }

    for (std::size_t i = 0; i < events.size(); ++i) {
        const Event& ev = events[i];
        const std::string at = "events[" + std::to_string(i) + "]";
        if (!std::isfinite(ev.t_s) || ev.t_s < 0.0) {
            throw ConfigError(at + ".t_s", "event time must be >= 0");
        }
        if (i > 0 && ev.t_s < events[i - 1].t_s) {
            throw ConfigError(at + ".t_s",
                              "events must be listed in time order");
        }
        switch (ev.kind) {
        case EventKind::set_p_m:
            if (!std::isfinite(ev.value_a)) {
                throw ConfigError(at + ".value_a", "reference must be finite");
            }
            break;
        case EventKind::set_local_load:
            if (!(ev.value_a >= 0.0)) {
                throw ConfigError(at + ".value_a", "load must be >= 0");
            }
            break;
        case EventKind::set_grid_impedance:
            if (!(ev.value_a >= 0.0)) {
                throw ConfigError(at + ".value_a", "resistance must be >= 0");
            }
            if (!(ev.value_b > 0.0)) {
                throw ConfigError(at + ".value_b", "inductance must be > 0");
            }
            break;
        }
    }
}

Simulation::Simulation(const Scenario& scenario)
    : scenario_(validated(scenario)),
      network_(make_network(
          scenario_.v_g_v,
          make_grid_impedance(scenario_.r_g_ohm, scenario_.l_g_henry,
                              scenario_.omega_g_rad_s),
          scenario_.local_load_w, scenario_.vsg.e_0_v)),
      params_(scenario_.vsg),
      controller_(scenario_.fuzzy),
      state_(cold_start(scenario_.vsg)) {
    lagged_ = {params_.j_w_s2_per_rad, params_.d_w_s_per_rad,
               params_.k_q_v_per_var};
    if (scenario_.init == InitMode::steady_state) {
        // a stationary angle needs omega = omega_g; the damping term then
        // biases the power balance away from p_m when the grid runs off the
        // control's nominal frequency
        const double p_target =
            params_.p_m_w - params_.d_w_s_per_rad *
                                (scenario_.omega_g_rad_s -
                                 params_.omega_0_rad_s);
        const OperatingPoint op =
            solve_steady_state(network_, p_target, params_.q_m_var,
                               params_.e_0_v, params_.k_q_v_per_var);
        const PowerFlowResult pf =
            power_transfer(network_, op.e_r_v, op.theta_r_rad);
        state_.omega_rad_s = scenario_.omega_g_rad_s;
        state_.theta_r_rad = op.theta_r_rad;
        state_.e_r_v = op.e_r_v;
        state_.p_f_w = pf.p_e_w;
        state_.q_f_var = pf.q_e_var;
    }
}

void Simulation::apply_due_events() {
    while (next_event_ < scenario_.events.size() &&
           scenario_.events[next_event_].t_s <= t_) {
        const Event& ev = scenario_.events[next_event_];
        switch (ev.kind) {
        case EventKind::set_p_m:
            params_.p_m_w = ev.value_a;
            break;
        case EventKind::set_local_load:
            network_ = make_network(scenario_.v_g_v, network_.z, ev.value_a,
                                    scenario_.vsg.e_0_v);
            break;
        case EventKind::set_grid_impedance:
            network_ = make_network(
                scenario_.v_g_v,
                make_grid_impedance(ev.value_a, ev.value_b,
                                    scenario_.omega_g_rad_s),
                network_.local_load_w, scenario_.vsg.e_0_v);
            break;
        }
        ++next_event_;
    }
}

bool Simulation::step() {
    if (aborted_) return false;
    apply_due_events();

    const PowerFlowResult pf =
        power_transfer(network_, state_.e_r_v, state_.theta_r_rad);
    const VsgStepFlags flags =
        vsg_step(state_, params_, pf.p_e_w, pf.q_e_var, scenario_.dt_s);
    // the control integrates its angle against omega_0; transpose the
    // increment into the grid frame (a no-op when the frequencies agree)
    state_.theta_r_rad -= scenario_.dt_s * (scenario_.omega_g_rad_s -
                                            params_.omega_0_rad_s);

    ++step_index_;
    t_ = static_cast<double>(step_index_) * scenario_.dt_s;
    if (flags.droop_clamped) ++clamp_count_;

    if (!(std::abs(state_.theta_r_rad) < std::numbers::pi / 2.0)) {
        aborted_ = true;
        abort_t_ = t_;
        return false;
    }

    const AdaptedParams adapted =
        controller_.adapt(state_.q_f_var, network_.z.r_over_x, scenario_.vsg);
    const double lag = controller_.config().output_lag_cutoff_rad_s;
    if (lag > 0.0) {
        lagged_.j_w_s2_per_rad = filter_step(
            lagged_.j_w_s2_per_rad, adapted.j_w_s2_per_rad, lag, scenario_.dt_s);
        lagged_.d_w_s_per_rad = filter_step(
            lagged_.d_w_s_per_rad, adapted.d_w_s_per_rad, lag, scenario_.dt_s);
        lagged_.k_q_v_per_var = filter_step(
            lagged_.k_q_v_per_var, adapted.k_q_v_per_var, lag, scenario_.dt_s);
        params_.j_w_s2_per_rad = lagged_.j_w_s2_per_rad;
        params_.d_w_s_per_rad = lagged_.d_w_s_per_rad;
        params_.k_q_v_per_var = lagged_.k_q_v_per_var;
    } else {
        params_.j_w_s2_per_rad = adapted.j_w_s2_per_rad;
        params_.d_w_s_per_rad = adapted.d_w_s_per_rad;
        params_.k_q_v_per_var = adapted.k_q_v_per_var;
    }
    return true;
}

RunResult Simulation::run() {
    RunResult result;
    const auto n_steps = static_cast<std::int64_t>(
        std::llround(scenario_.duration_s / scenario_.dt_s));
    result.trajectory.reserve(
        static_cast<std::size_t>(n_steps / scenario_.record_stride) + 1);

    const auto record = [this, &result] {
        const PowerFlowResult pf =
            power_transfer(network_, state_.e_r_v, state_.theta_r_rad);
        TrajectorySample s;
        s.t = t_;
        s.p_e = pf.p_e_w;
        s.q_e = pf.q_e_var;
        s.p_grid = pf.p_grid_w;
        s.q_grid = pf.q_grid_var;
        s.omega = state_.omega_rad_s;
        s.e_r = state_.e_r_v;
        s.theta_r = state_.theta_r_rad;
        s.j = params_.j_w_s2_per_rad;
        s.d = params_.d_w_s_per_rad;
        s.k_q = params_.k_q_v_per_var;
        result.trajectory.push_back(s);
    };

    record();
    for (std::int64_t k = 1; k <= n_steps; ++k) {
        if (!step()) break;
        if (k % scenario_.record_stride == 0) record();
    }
    if (aborted_) {
        result.status = RunStatus::aborted;
        result.abort_reason = "loss of synchronism";
        result.abort_t_s = abort_t_;
    }
    result.droop_clamp_count = clamp_count_;
    return result;
}

RunResult run_scenario(const Scenario& scenario) {
    Simulation sim(scenario);
    return sim.run();
}

RunPair run_pair(Scenario scenario) {
    RunPair pair;
    scenario.fuzzy.enabled = false;
    pair.baseline = run_scenario(scenario);
    scenario.fuzzy.enabled = true;
    pair.decoupled = run_scenario(scenario);
    return pair;
}

} // namespace vsgsim
