#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "vsgsim/errors.hpp"
#include "vsgsim/power_flow.hpp"

using namespace vsgsim;

namespace {

NetworkConfig nominal_network(double load_w = 0.0) {
    return make_network(220.0, make_grid_impedance(1.25, 4e-3, 314.0), load_w);
}

/// Independent reference route: complex apparent power of the source,
/// s = 3 e conj(i_line) + load draw, with i_line = (e - v) / z.
PowerFlowResult phasor_reference(const NetworkConfig& net, double e, double th) {
    const Complex ev = std::polar(e, th);
    const Complex i = (ev - Complex(net.v_g_v, 0.0)) / net.z.phasor();
    const Complex s_line = 3.0 * ev * std::conj(i);
    const Complex s_grid = 3.0 * Complex(net.v_g_v, 0.0) * std::conj(i);
    const double p_load = 3.0 * net.g_load_s * e * e;
    return {s_line.real() + p_load, s_line.imag(), s_grid.real(), s_grid.imag()};
}

} // namespace

TEST_SUITE_BEGIN("power_flow");

TEST_CASE("closed form matches the phasor reference across random states") {
    std::mt19937 rng(20240812);
    std::uniform_real_distribution<double> ed(100.0, 300.0);
    std::uniform_real_distribution<double> thd(-0.5, 0.5);
    std::uniform_real_distribution<double> rd(0.0, 3.0);
    std::uniform_real_distribution<double> ld(0.5e-3, 25e-3);
    std::uniform_real_distribution<double> loadd(0.0, 8e3);
    for (int i = 0; i < 2000; ++i) {
        const NetworkConfig net = make_network(
            220.0, make_grid_impedance(rd(rng), ld(rng), 314.0), loadd(rng));
        const double e = ed(rng);
        const double th = thd(rng);
        const PowerFlowResult got = power_transfer(net, e, th);
        const PowerFlowResult want = phasor_reference(net, e, th);
        const double scale =
            std::max(1.0, std::hypot(want.p_e_w, want.q_e_var));
        CHECK(std::abs(got.p_e_w - want.p_e_w) <= 1e-9 * scale);
        CHECK(std::abs(got.q_e_var - want.q_e_var) <= 1e-9 * scale);
        CHECK(std::abs(got.p_grid_w - want.p_grid_w) <= 1e-9 * scale);
        CHECK(std::abs(got.q_grid_var - want.q_grid_var) <= 1e-9 * scale);
    }
}

TEST_CASE("reference transfer at a ten-degree-ish angle") {
    // Frozen from the phasor route at e = 220, theta = 0.1 on the nominal tie.
    const PowerFlowResult r = power_transfer(nominal_network(), 220.0, 0.1);
    CHECK(r.p_e_w == doctest::Approx(6087.027026448219).epsilon(1e-12));
    CHECK(r.q_e_var == doctest::Approx(-5480.404921520386).epsilon(1e-12));
}

TEST_CASE("no transfer when the source sits on the grid phasor") {
    const PowerFlowResult r = power_transfer(nominal_network(), 220.0, 0.0);
    CHECK(r.p_e_w == doctest::Approx(0.0).scale(1.0));
    CHECK(r.q_e_var == doctest::Approx(0.0).scale(1.0));
    CHECK(r.p_grid_w == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("local load draws its rating at nominal voltage") {
    const NetworkConfig net = nominal_network(5e3);
    const PowerFlowResult r = power_transfer(net, 220.0, 0.0);
    CHECK(r.p_e_w == doctest::Approx(5e3).epsilon(1e-12));
    CHECK(r.p_grid_w == doctest::Approx(0.0).scale(1.0));
    // quadratic in voltage because the conductance is sized once at e_0
    const PowerFlowResult r2 = power_transfer(net, 2.0 * 220.0, 0.0);
    const Complex i = line_current(net, 2.0 * 220.0, 0.0);
    const double line_p = r2.p_grid_w + 3.0 * std::norm(i) * net.z.r_ohm;
    CHECK(r2.p_e_w - line_p == doctest::Approx(4.0 * 5e3).epsilon(1e-9));
}

TEST_CASE("active power balances source, load, grid and line loss") {
    std::mt19937 rng(20240813);
    std::uniform_real_distribution<double> ed(100.0, 300.0);
    std::uniform_real_distribution<double> thd(-0.5, 0.5);
    std::uniform_real_distribution<double> rd(0.1, 3.0);
    std::uniform_real_distribution<double> ld(0.5e-3, 25e-3);
    std::uniform_real_distribution<double> loadd(0.0, 8e3);
    for (int i = 0; i < 500; ++i) {
        const NetworkConfig net = make_network(
            220.0, make_grid_impedance(rd(rng), ld(rng), 314.0), loadd(rng));
        const double e = ed(rng);
        const double th = thd(rng);
        const PowerFlowResult r = power_transfer(net, e, th);
        const Complex il = line_current(net, e, th);
        const double p_load = 3.0 * net.g_load_s * e * e;
        const double loss = 3.0 * std::norm(il) * net.z.r_ohm;
        const double q_loss = 3.0 * std::norm(il) * net.z.x_ohm;
        CHECK(r.p_e_w ==
              doctest::Approx(p_load + r.p_grid_w + loss).epsilon(1e-9));
        CHECK(r.q_e_var == doctest::Approx(r.q_grid_var + q_loss).epsilon(1e-9));
    }
}

TEST_CASE("small-signal gains at the nominal open-loop point") {
    // Frozen from the analytic derivatives, independently evaluated.
    const SmallSignalGains g = small_signal_gains(nominal_network(), 220.0, 0.0);
    CHECK(g.g1_w_per_rad == doctest::Approx(58079.33412228395).epsilon(1e-12));
    CHECK(g.g2_w_per_v == doctest::Approx(262.73584124513224).epsilon(1e-12));
    CHECK(g.g3_var_per_rad == doctest::Approx(-57801.885073929094).epsilon(1e-12));
    CHECK(g.g4_var_per_v == doctest::Approx(263.99697328310884).epsilon(1e-12));
}

TEST_CASE("gains equal central finite differences") {
    std::mt19937 rng(20240814);
    std::uniform_real_distribution<double> ed(150.0, 280.0);
    std::uniform_real_distribution<double> thd(-0.4, 0.4);
    std::uniform_real_distribution<double> rd(0.2, 3.0);
    std::uniform_real_distribution<double> ld(0.5e-3, 25e-3);
    const double h = 1e-6;
    for (int i = 0; i < 200; ++i) {
        const NetworkConfig net =
            make_network(220.0, make_grid_impedance(rd(rng), ld(rng), 314.0));
        const double e = ed(rng);
        const double th = thd(rng);
        const SmallSignalGains g = small_signal_gains(net, e, th);
        const PowerFlowResult tp = power_transfer(net, e, th + h);
        const PowerFlowResult tm = power_transfer(net, e, th - h);
        const PowerFlowResult ep = power_transfer(net, e + h, th);
        const PowerFlowResult em = power_transfer(net, e - h, th);
        const double scale = 3.0 / net.z.z_ohm * net.v_g_v * e; // gain magnitude
        // relative agreement, with an absolute floor that absorbs the
        // cancellation noise of differencing ~1e6 W values at h = 1e-6
        const auto close = [scale](double got, double fd) {
            return std::abs(got - fd) <=
                   1e-6 * std::max(std::abs(got), std::abs(fd)) + 1e-7 * scale;
        };
        CHECK(close(g.g1_w_per_rad, (tp.p_e_w - tm.p_e_w) / (2 * h)));
        CHECK(close(g.g3_var_per_rad, (tp.q_e_var - tm.q_e_var) / (2 * h)));
        CHECK(close(g.g2_w_per_v, (ep.p_e_w - em.p_e_w) / (2 * h)));
        CHECK(close(g.g4_var_per_v, (ep.q_e_var - em.q_e_var) / (2 * h)));
    }
}

TEST_CASE("coupling prediction reference") {
    const SmallSignalGains g = small_signal_gains(nominal_network(), 220.0, 0.0);
    const CouplingPrediction c = coupling_prediction(g, 0.01, 1.0);
    CHECK(c.dp_w == doctest::Approx(843.5291824679719).epsilon(1e-12));
    CHECK(c.dq_var == doctest::Approx(-314.02187745618215).epsilon(1e-12));
}

TEST_CASE("coupling prediction error shrinks quadratically") {
    const NetworkConfig net = nominal_network();
    const double e0 = 230.0;
    const double th0 = 0.15;
    const SmallSignalGains g = small_signal_gains(net, e0, th0);
    const PowerFlowResult base = power_transfer(net, e0, th0);
    const auto pred_error = [&](double h) {
        const PowerFlowResult moved = power_transfer(net, e0 + h, th0 + h * 0.01);
        const CouplingPrediction c = coupling_prediction(g, h * 0.01, h);
        return std::hypot(moved.p_e_w - base.p_e_w - c.dp_w,
                          moved.q_e_var - base.q_e_var - c.dq_var);
    };
    const double r1 = pred_error(1.0) / pred_error(0.5);
    const double r2 = pred_error(0.5) / pred_error(0.25);
    CHECK(r1 == doctest::Approx(4.0).epsilon(0.15));
    CHECK(r2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("steady-state solve lands on the droop-consistent point") {
    const double k_q = 0.005;
    for (const auto& [r, l] : {std::pair{1.25, 4e-3}, {0.75, 0.95e-3},
                               {1.75, 5.5e-3}, {1.75, 2.2e-3}, {0.75, 2.3e-3}}) {
        CAPTURE(r);
        CAPTURE(l);
        const NetworkConfig net =
            make_network(220.0, make_grid_impedance(r, l, 314.0));
        const OperatingPoint op = solve_steady_state(net, 20e3, 0.0, 220.0, k_q);
        const PowerFlowResult pf = power_transfer(net, op.e_r_v, op.theta_r_rad);
        CHECK(pf.p_e_w == doctest::Approx(20e3).epsilon(1e-9));
        CHECK(op.e_r_v ==
              doctest::Approx(220.0 + k_q * (0.0 - pf.q_e_var)).epsilon(1e-9));
        CHECK(std::abs(op.theta_r_rad) < 1.57);
    }
}

TEST_CASE("steady-state solve handles a local load") {
    const NetworkConfig net = nominal_network(5e3);
    const OperatingPoint op = solve_steady_state(net, 20e3, 0.0, 220.0, 0.005);
    const PowerFlowResult pf = power_transfer(net, op.e_r_v, op.theta_r_rad);
    CHECK(pf.p_e_w == doctest::Approx(20e3).epsilon(1e-9));
}

TEST_CASE("unreachable power target is reported infeasible") {
    const NetworkConfig net = nominal_network();
    CHECK_THROWS_AS(solve_steady_state(net, 1e9, 0.0, 220.0, 0.005),
                    InfeasibleError);
}

TEST_CASE("network validation") {
    const GridImpedance z = make_grid_impedance(1.25, 4e-3, 314.0);
    CHECK_THROWS_AS(make_network(0.0, z), ConfigError);
    CHECK_THROWS_AS(make_network(220.0, z, -1.0), ConfigError);
    CHECK_THROWS_AS(make_network(220.0, z, 0.0, 0.0), ConfigError);
}

TEST_SUITE_END();
