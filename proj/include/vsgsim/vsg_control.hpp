#pragma once

namespace vsgsim {

/// Virtual synchronous generator control constants. Defaults are the nominal
/// bench values used throughout the bundled scenarios.
struct VsgParams {
    double j_w_s2_per_rad = 50.0;      // virtual inertia
    double d_w_s_per_rad = 90e3;       // frequency damping coefficient
    double k_q_v_per_var = 0.005;      // reactive-voltage droop gain
    double p_m_w = 20e3;               // active power reference
    double q_m_var = 0.0;              // reactive power reference
    double e_0_v = 220.0;              // no-load EMF amplitude, phase RMS
    double omega_0_rad_s = 314.0;      // nominal frequency, equals the grid's
    double filter_cutoff_rad_s = 31.4; // power measurement low-pass cutoff
};

/// Integrator state of the control loop. theta_r is the source angle
/// relative to the (constant-frequency) grid phasor.
struct VsgState {
    double omega_rad_s = 0.0;
    double theta_r_rad = 0.0;
    double e_r_v = 0.0;
    double p_f_w = 0.0;   // filtered active power
    double q_f_var = 0.0; // filtered reactive power
};

/// omega = omega_0, theta = 0, e_r = e_0, filters empty.
VsgState cold_start(const VsgParams& params);

/// One forward-Euler step of a first-order low-pass. Requires
/// cutoff * dt < 1 for a stable discretization.
double filter_step(double state, double raw, double cutoff_rad_s, double dt_s);

/// Swing dynamics, forward Euler:
///   omega' = omega + dt (p_m - p_f - d (omega - omega_0)) / (j omega_0)
///   theta' = theta + dt (omega' - omega_0)
/// The angle integrates the already-updated frequency.
void swing_step(VsgState& state, const VsgParams& params, double dt_s);

/// e = e_0 + k_q (q_m - q_f), clamped to [0.5 e_0, 1.5 e_0]. `clamped` (when
/// non-null) reports whether the band was hit.
double reactive_droop(const VsgParams& params, double q_f_var,
                      bool* clamped = nullptr);

struct VsgStepFlags {
    bool droop_clamped = false;
    bool in_synchronism = true; // false once |theta_r| reaches pi/2
};

/// Full control step: filter both power measurements, advance the swing
/// integrators, then refresh the droop voltage. Synchronism is lost when the
/// angle leaves (-pi/2, pi/2); the caller decides how to abort.
VsgStepFlags vsg_step(VsgState& state, const VsgParams& params, double p_raw_w,
                      double q_raw_var, double dt_s);

} // namespace vsgsim
