#include "vsgsim/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vsgsim/errors.hpp"

namespace vsgsim {

double GaussianMf::membership(double x) const {
    const double d = x - center;
    return std::exp(-d * d / (2.0 * sigma * sigma));
}

const char* to_string(Label label) {
    switch (label) {
    case Label::S: return "S";
    case Label::M: return "M";
    case Label::L: return "L";
    case Label::VL: return "VL";
    }
    return "?";
}

RuleTable inertia_rule_table() {
    return {{{Label::S, Label::M, Label::L},   // r/x moderate
             {Label::S, Label::S, Label::M}}}; // r/x high
}

RuleTable damping_rule_table() {
    return {{{Label::VL, Label::L, Label::M},
             {Label::VL, Label::VL, Label::L}}};
}

RuleTable droop_rule_table() {
    return {{{Label::L, Label::M, Label::S},
             {Label::L, Label::L, Label::M}}};
}

void OutputScale::validate(const std::string& path) const {
    if (singletons.empty()) {
        throw ConfigError(path + ".singletons", "at least one level is required");
    }
    if (!(lo < hi)) {
        throw ConfigError(path, "range must satisfy lo < hi");
    }
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& [label, value] : singletons) {
        if (!std::isfinite(value)) {
            throw ConfigError(path + ".singletons",
                              std::string(to_string(label)) + " is not finite");
        }
        if (!(value > prev)) {
            throw ConfigError(path + ".singletons",
                              std::string(to_string(label)) +
                                  " must exceed the previous level's value");
        }
        if (value < lo || value > hi) {
            throw ConfigError(path + ".singletons",
                              std::string(to_string(label)) +
                                  " lies outside [lo, hi]");
        }
        prev = value;
    }
}

void FuzzyConfig::validate(const std::string& path) const {
    const auto check_mf = [&path](const GaussianMf& mf, const char* name) {
        if (!(mf.sigma > 0.0) || !std::isfinite(mf.sigma) ||
            !std::isfinite(mf.center)) {
            throw ConfigError(path + ".mfs." + name,
                              "requires a finite center and sigma > 0");
        }
    };
    check_mf(mfs.q_vn, "q_vn");
    check_mf(mfs.q_n, "q_n");
    check_mf(mfs.q_z, "q_z");
    check_mf(mfs.rx_m, "rx_m");
    check_mf(mfs.rx_h, "rx_h");
    if (!(s_base_va > 0.0)) {
        throw ConfigError(path + ".s_base_va", "normalization base must be > 0");
    }
    j_scale.validate(path + ".j_scale");
    d_scale.validate(path + ".d_scale");
    k_q_scale.validate(path + ".k_q_scale");
    if (!(output_lag_cutoff_rad_s >= 0.0)) {
        throw ConfigError(path + ".output_lag_cutoff_rad_s",
                          "lag cutoff must be >= 0 (0 disables the lag)");
    }
}

FuzzyController::FuzzyController(const FuzzyConfig& config) : config_(config) {
    config_.validate("fuzzy");
}

FiringStrengths FuzzyController::fire_rules(double q_e_pu,
                                            double r_over_x) const {
    const double wq[3] = {config_.mfs.q_vn.membership(q_e_pu),
                          config_.mfs.q_n.membership(q_e_pu),
                          config_.mfs.q_z.membership(q_e_pu)};
    const double wr[2] = {config_.mfs.rx_m.membership(r_over_x),
                          config_.mfs.rx_h.membership(r_over_x)};
    FiringStrengths w{};
    for (std::size_t row = 0; row < 2; ++row) {
        for (std::size_t col = 0; col < 3; ++col) {
            w[row * 3 + col] = wr[row] * wq[col];
        }
    }
    return w;
}

double FuzzyController::defuzzify(const FiringStrengths& strengths,
                                  const RuleTable& table,
                                  const OutputScale& scale) {
    // Normalize by the peak strength so far-from-center inputs cannot
    // underflow the denominator.
    double peak = 0.0;
    for (const double w : strengths) peak = std::max(peak, w);
    if (!(peak > 0.0)) {
        throw std::domain_error("every rule strength underflowed to zero");
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t row = 0; row < 2; ++row) {
        for (std::size_t col = 0; col < 3; ++col) {
            const double w = strengths[row * 3 + col] / peak;
            num += w * scale.singletons.at(table[row][col]);
            den += w;
        }
    }
    // the center average lies in [lo, hi] exactly; the clamp only removes
    // one-ulp rounding excursions past a saturated extreme
    return std::clamp(num / den, scale.lo, scale.hi);
}

AdaptedParams FuzzyController::adapt(double q_e_f_var, double r_over_x,
                                     const VsgParams& baseline) const {
    AdaptedParams out{baseline.j_w_s2_per_rad, baseline.d_w_s_per_rad,
                      baseline.k_q_v_per_var};
    if (!config_.enabled) return out;
    if (!config_.adapt_j && !config_.adapt_d && !config_.adapt_k_q) return out;

    const FiringStrengths w =
        fire_rules(q_e_f_var / config_.s_base_va, r_over_x);
    if (config_.adapt_j) {
        out.j_w_s2_per_rad = defuzzify(w, inertia_rule_table(), config_.j_scale);
    }
    if (config_.adapt_d) {
        out.d_w_s_per_rad = defuzzify(w, damping_rule_table(), config_.d_scale);
    }
    if (config_.adapt_k_q) {
        out.k_q_v_per_var = defuzzify(w, droop_rule_table(), config_.k_q_scale);
    }
    return out;
}

} // namespace vsgsim
