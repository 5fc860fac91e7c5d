#include "vsgsim/grid.hpp"

#include <cmath>

#include "vsgsim/errors.hpp"

namespace vsgsim {

GridImpedance make_grid_impedance(double r_ohm, double l_henry,
                                  double omega_rad_s) {
    if (!(r_ohm >= 0.0)) {
        throw ConfigError("grid.r_ohm", "series resistance must be >= 0");
    }
    if (!(l_henry > 0.0)) {
        throw ConfigError("grid.l_henry", "series inductance must be > 0");
    }
    if (!(omega_rad_s > 0.0)) {
        throw ConfigError("grid.omega_rad_s", "angular frequency must be > 0");
    }
    GridImpedance z;
    z.r_ohm = r_ohm;
    z.x_ohm = omega_rad_s * l_henry;
    z.z_ohm = std::hypot(z.r_ohm, z.x_ohm);
    z.alpha_rad = std::atan2(z.x_ohm, z.r_ohm);
    z.r_over_x = z.r_ohm / z.x_ohm;
    return z;
}

double short_circuit_ratio(double v_phase_rms_v, double z_ohm,
                           double p_rated_w) {
    if (!(v_phase_rms_v > 0.0)) {
        throw ConfigError("scr.v_phase_rms_v", "voltage must be > 0");
    }
    if (!(z_ohm > 0.0)) {
        throw ConfigError("scr.z_ohm", "impedance magnitude must be > 0");
    }
    if (!(p_rated_w > 0.0)) {
        throw ConfigError("scr.p_rated_w", "rated power must be > 0");
    }
    return v_phase_rms_v * v_phase_rms_v / (z_ohm * p_rated_w);
}

GridStrength classify_grid(double scr) {
    if (scr <= 2.0) return GridStrength::very_weak;
    if (scr <= 3.0) return GridStrength::weak;
    return GridStrength::strong;
}

const char* to_string(GridStrength strength) {
    switch (strength) {
    case GridStrength::very_weak: return "very-weak";
    case GridStrength::weak: return "weak";
    case GridStrength::strong: return "strong";
    }
    return "unknown";
}

} // namespace vsgsim
