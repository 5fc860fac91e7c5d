#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vsgsim/errors.hpp"
#include "vsgsim/metrics.hpp"
#include "vsgsim/scenario_io.hpp"
#include "vsgsim/sim_engine.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config_error = 1;
constexpr int exit_aborted = 2;
constexpr int exit_not_settled = 3;

/// Stream the writer either to stdout or to the named file.
template <typename Writer>
void emit(const std::string& out_path, Writer&& writer) {
    if (out_path.empty()) {
        writer(std::cout);
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        throw vsgsim::ConfigError(out_path, "cannot open for writing");
    }
    writer(out);
}

struct SimulateArgs {
    std::string scenario;
    std::string out_path;
    std::string decoupler = "file-default";
    double dt_s = 0.0;
    double duration_s = 0.0;
    std::int64_t stride = 0;
    bool dt_set = false;
    bool duration_set = false;
    bool stride_set = false;
};

int run_simulate(const SimulateArgs& args) {
    vsgsim::ScenarioFile file = vsgsim::load_scenario(args.scenario);
    vsgsim::Scenario& s = file.scenario;
    if (args.decoupler == "on") s.fuzzy.enabled = true;
    if (args.decoupler == "off") s.fuzzy.enabled = false;
    if (args.dt_set) s.dt_s = args.dt_s;
    if (args.duration_set) s.duration_s = args.duration_s;
    if (args.stride_set) s.record_stride = args.stride;

    const vsgsim::RunResult run = vsgsim::run_scenario(s);
    emit(args.out_path,
         [&](std::ostream& out) { vsgsim::write_trajectory_csv(run, out); });
    if (run.status == vsgsim::RunStatus::aborted) {
        std::cerr << s.label << ": aborted (" << run.abort_reason
                  << ") at t=" << run.abort_t_s << " s\n";
        return exit_aborted;
    }
    return exit_ok;
}

/// Baseline/decoupled comparison rows: one per sweep entry when the scenario
/// carries a grid sweep, otherwise a single row for the scenario itself.
std::vector<vsgsim::ComparisonRow> comparison_rows(
    const vsgsim::ScenarioFile& file) {
    std::vector<vsgsim::Scenario> variants;
    if (file.sweep.empty()) {
        variants.push_back(file.scenario);
    } else {
        for (const vsgsim::SweepEntry& entry : file.sweep) {
            vsgsim::Scenario s = file.scenario;
            s.label = entry.label;
            s.r_g_ohm = entry.r_g_ohm;
            s.l_g_henry = entry.l_g_henry;
            variants.push_back(std::move(s));
        }
    }
    std::vector<vsgsim::ComparisonRow> rows;
    rows.reserve(variants.size());
    for (const vsgsim::Scenario& s : variants) {
        rows.push_back(vsgsim::compare_runs(s, vsgsim::run_pair(s)));
    }
    return rows;
}

int run_compare(const std::string& scenario, const std::string& out_path) {
    const vsgsim::ScenarioFile file = vsgsim::load_scenario(scenario);
    const std::vector<vsgsim::ComparisonRow> rows = comparison_rows(file);
    emit(out_path, [&](std::ostream& out) {
        vsgsim::write_comparison_csv(rows, out);
    });
    for (const vsgsim::ComparisonRow& row : rows) {
        if (!row.settled) return exit_not_settled;
    }
    return exit_ok;
}

int run_sweep(const std::string& scenario, const std::string& parameter,
              const std::vector<double>& values, const std::string& out_path) {
    const vsgsim::ScenarioFile file = vsgsim::load_scenario(scenario);
    std::vector<vsgsim::ComparisonRow> rows;
    rows.reserve(values.size());
    for (double value : values) {
        vsgsim::Scenario s = file.scenario;
        if (!vsgsim::apply_scenario_parameter(s, parameter, value)) {
            throw vsgsim::ConfigError(
                parameter, "not a sweepable parameter (see `vsgsim list`)");
        }
        rows.push_back(vsgsim::compare_runs(s, vsgsim::run_pair(s)));
    }
    emit(out_path, [&](std::ostream& out) {
        vsgsim::write_sweep_csv(parameter, values, rows, out);
    });
    for (const vsgsim::ComparisonRow& row : rows) {
        if (!row.settled) return exit_not_settled;
    }
    return exit_ok;
}

int run_list() {
    std::cout << "bundled scenarios:\n";
    for (const auto& [name, text] : vsgsim::bundled_scenarios()) {
        std::cout << "  " << name << '\n';
    }
    std::cout << "sweepable parameters:\n";
    for (const std::string& name : vsgsim::sweepable_parameters()) {
        std::cout << "  " << name << '\n';
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Phasor-domain studies of a grid-forming virtual synchronous "
        "generator with fuzzy-adaptive power decoupling"};
    app.require_subcommand(0, 1);

    bool dump_defaults = false;
    app.add_flag("--dump-defaults", dump_defaults,
                 "print the default scenario as JSON and exit");

    SimulateArgs sim_args;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "run one scenario and write its trajectory CSV");
    simulate
        ->add_option("scenario", sim_args.scenario,
                     "bundled scenario name or JSON file path")
        ->required();
    simulate->add_option("--out", sim_args.out_path,
                         "output CSV path (stdout when omitted)");
    simulate
        ->add_option("--decoupler", sim_args.decoupler,
                     "force the adaptive decoupler on or off")
        ->check(CLI::IsMember({"on", "off", "file-default"}));
    CLI::Option* dt_opt =
        simulate->add_option("--dt", sim_args.dt_s, "integration step [s]");
    CLI::Option* duration_opt = simulate->add_option(
        "--duration", sim_args.duration_s, "simulated horizon [s]");
    CLI::Option* stride_opt = simulate->add_option(
        "--stride", sim_args.stride, "record every n-th step");

    std::string cmp_scenario;
    std::string cmp_out;
    CLI::App* compare = app.add_subcommand(
        "compare",
        "run the scenario with the decoupler off and on, report both");
    compare
        ->add_option("scenario", cmp_scenario,
                     "bundled scenario name or JSON file path")
        ->required();
    compare->add_option("--out", cmp_out,
                        "output CSV path (stdout when omitted)");

    std::string swp_scenario;
    std::string swp_param;
    std::string swp_out;
    std::vector<double> swp_values;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "repeat the off/on comparison across parameter values");
    sweep
        ->add_option("scenario", swp_scenario,
                     "bundled scenario name or JSON file path")
        ->required();
    sweep->add_option("--param", swp_param, "dotted scenario field to vary")
        ->required();
    sweep->add_option("--values", swp_values, "comma-separated values")
        ->required()
        ->delimiter(',');
    sweep->add_option("--out", swp_out,
                      "output CSV path (stdout when omitted)");

    CLI::App* list = app.add_subcommand(
        "list", "show bundled scenarios and sweepable parameters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (dump_defaults) {
            std::cout << vsgsim::scenario_to_json(vsgsim::default_scenario())
                      << '\n';
            return exit_ok;
        }
        if (simulate->parsed()) {
            sim_args.dt_set = dt_opt->count() > 0;
            sim_args.duration_set = duration_opt->count() > 0;
            sim_args.stride_set = stride_opt->count() > 0;
            return run_simulate(sim_args);
        }
        if (compare->parsed()) {
            return run_compare(cmp_scenario, cmp_out);
        }
        if (sweep->parsed()) {
            return run_sweep(swp_scenario, swp_param, swp_values, swp_out);
        }
        if (list->parsed()) {
            return run_list();
        }
        std::cerr << app.help();
        return exit_config_error;
    } catch (const vsgsim::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const vsgsim::InfeasibleError& e) {
        std::cerr << "infeasible operating point: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config_error;
    }
}
