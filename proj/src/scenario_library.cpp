#include "vsgsim/scenario_io.hpp"

namespace vsgsim {

/// The bundled studies cover the four benchmark grid ties (two impedance
/// magnitudes at each of the two r/x ratios), the resistive tie used to
/// demonstrate raw power coupling, and two disturbance drills. All of them
/// run the nominal 220 V / 20 kW machine for 10 s at dt = 0.1 ms.
const std::map<std::string, std::string>& bundled_scenarios() {
    static const std::map<std::string, std::string> library = {
        {"coupling_baseline", R"json({
  "label": "coupling_baseline",
  "grid": {"r_g_ohm": 0.75, "l_g_henry": 0.95e-3}
})json"},
        {"rx1_nominal", R"json({
  "label": "rx1_nominal",
  "grid": {"r_g_ohm": 1.25, "l_g_henry": 4e-3},
  "fuzzy": {"enabled": true}
})json"},
        {"rx1_low_z", R"json({
  "label": "rx1_low_z",
  "grid": {"r_g_ohm": 0.75, "l_g_henry": 2.3e-3},
  "fuzzy": {"enabled": true}
})json"},
        {"rx1_high_z", R"json({
  "label": "rx1_high_z",
  "grid": {"r_g_ohm": 1.75, "l_g_henry": 5.5e-3},
  "fuzzy": {"enabled": true}
})json"},
        {"rx25_low_z", R"json({
  "label": "rx25_low_z",
  "grid": {"r_g_ohm": 0.75, "l_g_henry": 0.95e-3},
  "fuzzy": {"enabled": true}
})json"},
        {"rx25_high_z", R"json({
  "label": "rx25_high_z",
  "grid": {"r_g_ohm": 1.75, "l_g_henry": 2.2e-3},
  "fuzzy": {"enabled": true}
})json"},
        {"load_step", R"json({
  "label": "load_step",
  "grid": {"r_g_ohm": 1.75, "l_g_henry": 2.2e-3},
  "fuzzy": {"enabled": true},
  "events": [
    {"t_s": 5.0, "kind": "set_local_load", "local_load_w": 5e3}
  ]
})json"},
        {"ref_step", R"json({
  "label": "ref_step",
  "grid": {"r_g_ohm": 1.25, "l_g_henry": 4e-3},
  "vsg": {"p_m_w": 10e3},
  "fuzzy": {"enabled": true},
  "events": [
    {"t_s": 3.0, "kind": "set_p_m", "p_m_w": 20e3},
    {"t_s": 6.0, "kind": "set_p_m", "p_m_w": 10e3}
  ]
})json"},
        {"impedance_sweep", R"json({
  "label": "impedance_sweep",
  "fuzzy": {"enabled": true},
  "sweep": [
    {"label": "rx1_low_z", "r_g_ohm": 0.75, "l_g_henry": 2.3e-3},
    {"label": "rx1_high_z", "r_g_ohm": 1.75, "l_g_henry": 5.5e-3},
    {"label": "rx25_low_z", "r_g_ohm": 0.75, "l_g_henry": 0.95e-3},
    {"label": "rx25_high_z", "r_g_ohm": 1.75, "l_g_henry": 2.2e-3}
  ]
})json"},
    };
    return library;
}

} // namespace vsgsim
