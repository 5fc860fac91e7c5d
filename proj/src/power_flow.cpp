#include "vsgsim/power_flow.hpp"

#include <cmath>
#include <numbers>

#include "vsgsim/errors.hpp"

namespace vsgsim {

NetworkConfig make_network(double v_g_v, const GridImpedance& z,
                           double local_load_w, double e_0_v) {
    if (!(v_g_v > 0.0)) {
        throw ConfigError("network.v_g_v", "infinite-bus voltage must be > 0");
    }
    if (!(local_load_w >= 0.0)) {
        throw ConfigError("network.local_load_w", "load rating must be >= 0");
    }
    if (!(e_0_v > 0.0)) {
        throw ConfigError("network.e_0_v", "sizing voltage must be > 0");
    }
    NetworkConfig net;
    net.v_g_v = v_g_v;
    net.z = z;
    net.local_load_w = local_load_w;
    net.g_load_s = local_load_w / (3.0 * e_0_v * e_0_v);
    return net;
}

PowerFlowResult power_transfer(const NetworkConfig& net, double e_r_v,
                               double theta_r_rad) {
    const double k = 3.0 / net.z.z_ohm;
    const double a = net.z.alpha_rad;
    const double vg = net.v_g_v;
    const double e = e_r_v;
    const double th = theta_r_rad;

    PowerFlowResult r;
    const double p_line = k * (e * e * std::cos(a) - vg * e * std::cos(a + th));
    const double q_line = k * (e * e * std::sin(a) - vg * e * std::sin(a + th));
    const double p_load = 3.0 * net.g_load_s * e * e;
    r.p_e_w = p_line + p_load;
    r.q_e_var = q_line;
    // s_grid = 3 v_g conj(i) = (3 v_g / z) [e < (alpha - theta) - v_g < alpha]
    r.p_grid_w = k * vg * (e * std::cos(a - th) - vg * std::cos(a));
    r.q_grid_var = k * vg * (e * std::sin(a - th) - vg * std::sin(a));
    return r;
}

Complex line_current(const NetworkConfig& net, double e_r_v,
                     double theta_r_rad) {
    const Complex ev = std::polar(e_r_v, theta_r_rad);
    return (ev - Complex(net.v_g_v, 0.0)) / net.z.phasor();
}

SmallSignalGains small_signal_gains(const NetworkConfig& net, double e_r0_v,
                                    double theta_r0_rad) {
    const double k = 3.0 / net.z.z_ohm;
    const double a = net.z.alpha_rad;
    const double vg = net.v_g_v;
    const double e = e_r0_v;
    const double th = theta_r0_rad;

    SmallSignalGains g;
    g.g1_w_per_rad = k * vg * e * std::sin(a + th);
    g.g2_w_per_v = k * (2.0 * e * std::cos(a) - vg * std::cos(a + th));
    g.g3_var_per_rad = -k * vg * e * std::cos(a + th);
    g.g4_var_per_v = k * (2.0 * e * std::sin(a) - vg * std::sin(a + th));
    return g;
}

CouplingPrediction coupling_prediction(const SmallSignalGains& gains,
                                       double d_theta_rad, double d_e_v) {
    return {gains.g1_w_per_rad * d_theta_rad + gains.g2_w_per_v * d_e_v,
            gains.g3_var_per_rad * d_theta_rad + gains.g4_var_per_v * d_e_v};
}

OperatingPoint solve_steady_state(const NetworkConfig& net, double p_m_w,
                                  double q_m_var, double e_0_v,
                                  double k_q_v_per_var) {
    if (!(e_0_v > 0.0)) {
        throw ConfigError("solve.e_0_v", "no-load voltage must be > 0");
    }
    if (!(k_q_v_per_var >= 0.0)) {
        throw ConfigError("solve.k_q_v_per_var", "droop gain must be >= 0");
    }

    double th = 0.0;
    double e = e_0_v;
    const double p_tol = 1e-10 * std::max(1.0, std::abs(p_m_w));
    const double e_tol = 1e-10 * e_0_v;

    for (int it = 0; it < 200; ++it) {
        const PowerFlowResult pf = power_transfer(net, e, th);
        const double f1 = pf.p_e_w - p_m_w;
        const double f2 = e - e_0_v - k_q_v_per_var * (q_m_var - pf.q_e_var);
        if (std::abs(f1) <= p_tol && std::abs(f2) <= e_tol) {
            if (!(std::abs(th) < std::numbers::pi / 2.0)) {
                throw InfeasibleError(
                    "equilibrium angle outside the synchronism range");
            }
            if (!(e >= 0.5 * e_0_v && e <= 1.5 * e_0_v)) {
                throw InfeasibleError(
                    "equilibrium voltage outside the droop clamp band");
            }
            return {th, e};
        }

        const SmallSignalGains g = small_signal_gains(net, e, th);
        const double j11 = g.g1_w_per_rad;
        const double j12 = g.g2_w_per_v + 6.0 * net.g_load_s * e;
        const double j21 = k_q_v_per_var * g.g3_var_per_rad;
        const double j22 = 1.0 + k_q_v_per_var * g.g4_var_per_v;
        const double det = j11 * j22 - j12 * j21;
        if (!std::isfinite(det) || std::abs(det) < 1e-9) {
            throw InfeasibleError("singular power-flow jacobian");
        }
        th += (-f1 * j22 + f2 * j12) / det;
        e += (-j11 * f2 + j21 * f1) / det;
        if (!std::isfinite(th) || !std::isfinite(e) || std::abs(th) > 1e3 ||
            std::abs(e) > 1e6 * e_0_v) {
            throw InfeasibleError("newton iteration diverged");
        }
    }
    throw InfeasibleError("no operating point within the iteration budget");
}

} // namespace vsgsim
