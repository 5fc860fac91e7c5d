#include "vsgsim/vsg_control.hpp"

#include <cmath>
#include <numbers>

namespace vsgsim {

VsgState cold_start(const VsgParams& params) {
    VsgState s;
    s.omega_rad_s = params.omega_0_rad_s;
    s.theta_r_rad = 0.0;
    s.e_r_v = params.e_0_v;
    s.p_f_w = 0.0;
    s.q_f_var = 0.0;
    return s;
}

double filter_step(double state, double raw, double cutoff_rad_s, double dt_s) {
    return state + cutoff_rad_s * dt_s * (raw - state);
}

void swing_step(VsgState& state, const VsgParams& params, double dt_s) {
    const double torque =
        params.p_m_w - state.p_f_w -
        params.d_w_s_per_rad * (state.omega_rad_s - params.omega_0_rad_s);
    state.omega_rad_s +=
        dt_s * torque / (params.j_w_s2_per_rad * params.omega_0_rad_s);
    state.theta_r_rad += dt_s * (state.omega_rad_s - params.omega_0_rad_s);
}

double reactive_droop(const VsgParams& params, double q_f_var, bool* clamped) {
    const double lo = 0.5 * params.e_0_v;
    const double hi = 1.5 * params.e_0_v;
    double e = params.e_0_v + params.k_q_v_per_var * (params.q_m_var - q_f_var);
    bool hit = false;
    if (e < lo) {
        e = lo;
        hit = true;
    } else if (e > hi) {
        e = hi;
        hit = true;
    }
    if (clamped) *clamped = hit;
    return e;
}

VsgStepFlags vsg_step(VsgState& state, const VsgParams& params, double p_raw_w,
                      double q_raw_var, double dt_s) {
    state.p_f_w =
        filter_step(state.p_f_w, p_raw_w, params.filter_cutoff_rad_s, dt_s);
    state.q_f_var =
        filter_step(state.q_f_var, q_raw_var, params.filter_cutoff_rad_s, dt_s);
    swing_step(state, params, dt_s);

    VsgStepFlags flags;
    state.e_r_v = reactive_droop(params, state.q_f_var, &flags.droop_clamped);
    flags.in_synchronism =
        std::abs(state.theta_r_rad) < std::numbers::pi / 2.0;
    return flags;
}

} // namespace vsgsim
