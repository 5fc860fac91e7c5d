#pragma once

#include "vsgsim/grid.hpp"

namespace vsgsim {

/// Two-bus network: the inverter's internal source e_r < theta_r feeds the
/// PCC directly (ideal inner loops), a series impedance ties the PCC to an
/// infinite bus v_g < 0, and an optional resistive load hangs off the PCC.
struct NetworkConfig {
    double v_g_v = 220.0;     // infinite-bus phase voltage, RMS
    GridImpedance z;
    double local_load_w = 0.0; // three-phase load rating at nominal voltage
    double g_load_s = 0.0;     // per-phase load conductance, fixed once sized
};

/// Size the load conductance once at the nominal voltage e_0: the load draws
/// local_load_w * (e_r / e_0)^2 at other PCC voltages.
NetworkConfig make_network(double v_g_v, const GridImpedance& z,
                           double local_load_w = 0.0, double e_0_v = 220.0);

struct PowerFlowResult {
    double p_e_w = 0.0;      // three-phase active power out of the source
    double q_e_var = 0.0;    // three-phase reactive power out of the source
    double p_grid_w = 0.0;   // active power arriving at the infinite bus
    double q_grid_var = 0.0; // reactive power arriving at the infinite bus
};

/// Closed-form transfer across the tie plus the local load:
///   p_line = (3/z) [e^2 cos(alpha) - v_g e cos(alpha + theta)]
///   q_line = (3/z) [e^2 sin(alpha) - v_g e sin(alpha + theta)]
/// p_e/q_e add the load draw at the PCC; grid-side values subtract the line
/// losses, so p_e = p_load + p_grid + 3 |i|^2 r at any state.
PowerFlowResult power_transfer(const NetworkConfig& net, double e_r_v,
                               double theta_r_rad);

/// Per-phase RMS line current phasor from the PCC toward the infinite bus.
Complex line_current(const NetworkConfig& net, double e_r_v, double theta_r_rad);

/// Partial derivatives of the line powers at an operating point. Load
/// conductance is excluded: these describe the tie alone.
struct SmallSignalGains {
    double g1_w_per_rad = 0.0;   // d p / d theta
    double g2_w_per_v = 0.0;     // d p / d e
    double g3_var_per_rad = 0.0; // d q / d theta
    double g4_var_per_v = 0.0;   // d q / d e
};

SmallSignalGains small_signal_gains(const NetworkConfig& net, double e_r0_v,
                                    double theta_r0_rad);

/// First-order cross-coupling prediction around the linearization point.
struct CouplingPrediction {
    double dp_w = 0.0;
    double dq_var = 0.0;
};

CouplingPrediction coupling_prediction(const SmallSignalGains& gains,
                                       double d_theta_rad, double d_e_v);

struct OperatingPoint {
    double theta_r_rad = 0.0;
    double e_r_v = 0.0;
};

/// Droop-consistent equilibrium: p_e(e, theta) = p_m together with
/// e = e_0 + k_q (q_m - q_e(e, theta)), theta in (-pi/2, pi/2) and e within
/// the droop clamp band [0.5 e_0, 1.5 e_0]. Newton iteration with the
/// analytic gains; throws InfeasibleError when no such point exists.
OperatingPoint solve_steady_state(const NetworkConfig& net, double p_m_w,
                                  double q_m_var, double e_0_v,
                                  double k_q_v_per_var);

} // namespace vsgsim
