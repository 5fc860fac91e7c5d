#pragma once

#include <span>
#include <string>
#include <vector>

#include "vsgsim/sim_engine.hpp"

namespace vsgsim {

struct SteadyStateOptions {
    double window_fraction = 0.1; // tail share of the series to average
    double flatness_tol = 0.02;   // max peak-to-peak over the window,
                                  // relative to the signal scale
};

/// Mean over the tail window, guarded by a flatness check: the window's
/// peak-to-peak excursion must stay within flatness_tol of the signal scale
/// (the largest magnitude seen anywhere in the series). Throws
/// NotSettledError otherwise.
double steady_state(std::span<const double> series, SteadyStateOptions opts = {});

/// 100 * (max(series) - final) / |final|, floored at zero. Requires a
/// non-zero final value and a non-empty series.
double overshoot_percent(std::span<const double> series, double final_value);

/// Extract one column of a trajectory.
std::vector<double> column(const RunResult& run, double TrajectorySample::*field);

/// Steady-state theta_r of a completed run.
double power_angle(const RunResult& run, SteadyStateOptions opts = {});

/// 100 * (decoupled - baseline) / baseline of delivered grid power. A
/// near-zero baseline (under 1e-6 W in magnitude) has no defined gain and
/// throws std::domain_error.
double delivery_gain_percent(double p_grid_base_w, double p_grid_dec_w);

/// Side-by-side steady-state summary of a baseline/decoupled pair.
struct ComparisonRow {
    std::string label;
    double r_g_ohm = 0.0;
    double l_g_henry = 0.0;
    double r_over_x = 0.0;
    double scr = 0.0;
    double delta_base_rad = 0.0;
    double delta_dec_rad = 0.0;
    double q_e_ss_base_var = 0.0;
    double q_e_ss_dec_var = 0.0;
    double p_grid_ss_base_w = 0.0;
    double p_grid_ss_dec_w = 0.0;
    double p_e_overshoot_base_pct = 0.0;
    double p_e_overshoot_dec_pct = 0.0;
    double q_reduction_pct = 0.0;
    double delta_ratio = 0.0;
    double delivery_gain_pct = 0.0;
    bool settled = true; // false rows carry NaN metric fields
};

/// Compute the summary for one scenario's run pair. Unsettled or aborted
/// runs yield settled = false with NaN metrics instead of throwing, so sweep
/// reports can keep their row count.
ComparisonRow compare_runs(const Scenario& scenario, const RunPair& pair,
                           SteadyStateOptions opts = {});

} // namespace vsgsim
