#include "vsgsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "vsgsim/errors.hpp"
#include "vsgsim/grid.hpp"

namespace vsgsim {

double steady_state(std::span<const double> series, SteadyStateOptions opts) {
    if (series.empty()) {
        throw std::invalid_argument("steady_state: empty series");
    }
    std::size_t count = static_cast<std::size_t>(
        static_cast<double>(series.size()) * opts.window_fraction);
    count = std::clamp<std::size_t>(count, 1, series.size());
    const std::span<const double> window =
        series.subspan(series.size() - count);

    double scale = 0.0;
    for (const double v : series) scale = std::max(scale, std::abs(v));

    double lo = window.front();
    double hi = window.front();
    double sum = 0.0;
    for (const double v : window) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
    }
    if (hi - lo > opts.flatness_tol * scale) {
        throw NotSettledError(
            "steady_state: tail window swings by " + std::to_string(hi - lo) +
            " against a signal scale of " + std::to_string(scale));
    }
    return sum / static_cast<double>(count);
}

double overshoot_percent(std::span<const double> series, double final_value) {
    if (series.empty()) {
        throw std::invalid_argument("overshoot_percent: empty series");
    }
    if (final_value == 0.0) {
        throw std::domain_error("overshoot_percent: zero final value");
    }
    double peak = series.front();
    for (const double v : series) peak = std::max(peak, v);
    return std::max(0.0, 100.0 * (peak - final_value) / std::abs(final_value));
}

std::vector<double> column(const RunResult& run,
                           double TrajectorySample::*field) {
    std::vector<double> values;
    values.reserve(run.trajectory.size());
    for (const TrajectorySample& s : run.trajectory) {
        values.push_back(s.*field);
    }
    return values;
}

double power_angle(const RunResult& run, SteadyStateOptions opts) {
    return steady_state(column(run, &TrajectorySample::theta_r), opts);
}

double delivery_gain_percent(double p_grid_base_w, double p_grid_dec_w) {
    if (std::abs(p_grid_base_w) < 1e-6) {
        throw std::domain_error(
            "delivery_gain_percent: baseline delivery is too close to zero");
    }
    return 100.0 * (p_grid_dec_w - p_grid_base_w) / p_grid_base_w;
}

ComparisonRow compare_runs(const Scenario& scenario, const RunPair& pair,
                           SteadyStateOptions opts) {
    ComparisonRow row;
    row.label = scenario.label;
    row.r_g_ohm = scenario.r_g_ohm;
    row.l_g_henry = scenario.l_g_henry;
    const GridImpedance z = make_grid_impedance(
        scenario.r_g_ohm, scenario.l_g_henry, scenario.omega_g_rad_s);
    row.r_over_x = z.r_over_x;
    row.scr = short_circuit_ratio(scenario.v_g_v, z.z_ohm, scenario.vsg.p_m_w);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    const auto invalidate = [&row, nan] {
        row.settled = false;
        row.delta_base_rad = nan;
        row.delta_dec_rad = nan;
        row.q_e_ss_base_var = nan;
        row.q_e_ss_dec_var = nan;
        row.p_grid_ss_base_w = nan;
        row.p_grid_ss_dec_w = nan;
        row.p_e_overshoot_base_pct = nan;
        row.p_e_overshoot_dec_pct = nan;
        row.q_reduction_pct = nan;
        row.delta_ratio = nan;
        row.delivery_gain_pct = nan;
    };

    if (pair.baseline.status != RunStatus::completed ||
        pair.decoupled.status != RunStatus::completed) {
        invalidate();
        return row;
    }

    try {
        row.delta_base_rad = power_angle(pair.baseline, opts);
        row.delta_dec_rad = power_angle(pair.decoupled, opts);
        row.q_e_ss_base_var =
            steady_state(column(pair.baseline, &TrajectorySample::q_e), opts);
        row.q_e_ss_dec_var =
            steady_state(column(pair.decoupled, &TrajectorySample::q_e), opts);
        row.p_grid_ss_base_w =
            steady_state(column(pair.baseline, &TrajectorySample::p_grid), opts);
        row.p_grid_ss_dec_w =
            steady_state(column(pair.decoupled, &TrajectorySample::p_grid), opts);

        const std::vector<double> p_base =
            column(pair.baseline, &TrajectorySample::p_e);
        const std::vector<double> p_dec =
            column(pair.decoupled, &TrajectorySample::p_e);
        const double p_base_ss = steady_state(p_base, opts);
        const double p_dec_ss = steady_state(p_dec, opts);
        row.p_e_overshoot_base_pct =
            p_base_ss == 0.0 ? nan : overshoot_percent(p_base, p_base_ss);
        row.p_e_overshoot_dec_pct =
            p_dec_ss == 0.0 ? nan : overshoot_percent(p_dec, p_dec_ss);
    } catch (const NotSettledError&) {
        invalidate();
        return row;
    }

    row.q_reduction_pct =
        std::abs(row.q_e_ss_base_var) > 1e-9
            ? 100.0 * (1.0 - std::abs(row.q_e_ss_dec_var) /
                                 std::abs(row.q_e_ss_base_var))
            : nan;
    row.delta_ratio = std::abs(row.delta_base_rad) > 1e-12
                          ? row.delta_dec_rad / row.delta_base_rad
                          : nan;
    try {
        row.delivery_gain_pct =
            delivery_gain_percent(row.p_grid_ss_base_w, row.p_grid_ss_dec_w);
    } catch (const std::domain_error&) {
        row.delivery_gain_pct = nan;
    }
    return row;
}

} // namespace vsgsim
