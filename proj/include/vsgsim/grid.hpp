#pragma once

#include <complex>

namespace vsgsim {

/// Phasor carrier. All voltages are per-phase RMS, angles in radians.
using Complex = std::complex<double>;

/// Series grid impedance r + jx evaluated at a fixed angular frequency,
/// cached in both rectangular and polar form.
struct GridImpedance {
    double r_ohm = 0.0;     // series resistance
    double x_ohm = 0.0;     // series reactance omega * l
    double z_ohm = 0.0;     // magnitude
    double alpha_rad = 0.0; // impedance angle, atan2(x, r), in (0, pi/2]
    double r_over_x = 0.0;  // resistive-to-inductive ratio

    Complex phasor() const { return std::polar(z_ohm, alpha_rad); }
};

/// Derive the cached impedance quantities. Requires r_ohm >= 0, l_henry > 0
/// and omega_rad_s > 0 (the line always keeps an inductive part, so z > 0 and
/// r_over_x is finite).
GridImpedance make_grid_impedance(double r_ohm, double l_henry, double omega_rad_s);

/// Short-circuit ratio v^2 / (z * p_rated) of a grid tie.
double short_circuit_ratio(double v_phase_rms_v, double z_ohm, double p_rated_w);

enum class GridStrength {
    very_weak, // scr <= 2
    weak,      // 2 < scr <= 3
    strong     // scr > 3
};

GridStrength classify_grid(double scr);

const char* to_string(GridStrength strength);

} // namespace vsgsim
