#pragma once

#include <array>
#include <map>
#include <string>

#include "vsgsim/vsg_control.hpp"

namespace vsgsim {

struct GaussianMf {
    double center = 0.0;
    double sigma = 1.0; // must be > 0

    /// exp(-(x - c)^2 / (2 sigma^2)), always in (0, 1].
    double membership(double x) const;
};

/// Linguistic output levels, ordered weakest to strongest.
enum class Label { S, M, L, VL };

const char* to_string(Label label);

/// Input partitions. Reactive power is normalized to s_base before lookup;
/// its levels read "very negative", "negative", "zero". The impedance ratio
/// levels read "moderate" and "high".
struct InputMfs {
    GaussianMf q_vn{-0.5, 0.15};
    GaussianMf q_n{-0.2, 0.15};
    GaussianMf q_z{0.0, 0.15};
    GaussianMf rx_m{1.0, 0.6};
    GaussianMf rx_h{2.5, 0.6};
};

/// Consequent label per (r/x row, q column). Rows: {M, H}; columns:
/// {VN, N, Z}.
using RuleTable = std::array<std::array<Label, 3>, 2>;

/// Fixed consequent tables for the three adapted parameters.
RuleTable inertia_rule_table();  // shrink J as reactive error grows
RuleTable damping_rule_table();  // raise D as reactive error grows
RuleTable droop_rule_table();    // stiffen k_q as reactive error grows

/// Singleton output values for the labels a table uses, plus the admissible
/// range. Values must be strictly increasing in label order and lie inside
/// [lo, hi].
struct OutputScale {
    std::map<Label, double> singletons;
    double lo = 0.0;
    double hi = 0.0;

    /// Throws ConfigError with `path` context on violation.
    void validate(const std::string& path) const;
};

/// Rule activations, product t-norm, row-major [M, H] x [VN, N, Z].
/// Gaussian memberships keep every strength strictly positive.
using FiringStrengths = std::array<double, 6>;

struct AdaptedParams {
    double j_w_s2_per_rad = 0.0;
    double d_w_s_per_rad = 0.0;
    double k_q_v_per_var = 0.0;
};

struct FuzzyConfig {
    bool enabled = false;
    double s_base_va = 20e3; // reactive power normalization base
    InputMfs mfs;
    OutputScale j_scale{{{Label::S, 20.0}, {Label::M, 32.5}, {Label::L, 45.0}},
                        20.0,
                        45.0};
    OutputScale d_scale{
        {{Label::M, 140e3}, {Label::L, 165e3}, {Label::VL, 190e3}},
        140e3,
        190e3};
    OutputScale k_q_scale{{{Label::S, 0.1}, {Label::M, 0.3}, {Label::L, 0.5}},
                          0.1,
                          0.5};
    // Per-output switches; a disabled output passes the baseline value
    // through. With all three off an enabled controller is a no-op.
    bool adapt_j = true;
    bool adapt_d = true;
    bool adapt_k_q = true;
    // Optional first-order lag on the adapted values, 0 disables it.
    double output_lag_cutoff_rad_s = 0.0;

    void validate(const std::string& path) const;
};

/// Zero-order inference: Gaussian fuzzification, product t-norm over the two
/// inputs, center-average defuzzification onto the output singletons.
class FuzzyController {
public:
    explicit FuzzyController(const FuzzyConfig& config); // validates

    FiringStrengths fire_rules(double q_e_pu, double r_over_x) const;

    static double defuzzify(const FiringStrengths& strengths,
                            const RuleTable& table, const OutputScale& scale);

    /// Crisp (j, d, k_q) for the current filtered reactive power and
    /// impedance ratio. Disabled controller or disabled outputs return the
    /// baseline values unchanged.
    AdaptedParams adapt(double q_e_f_var, double r_over_x,
                        const VsgParams& baseline) const;

    const FuzzyConfig& config() const { return config_; }

private:
    FuzzyConfig config_;
};

} // namespace vsgsim
