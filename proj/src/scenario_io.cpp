#include "vsgsim/scenario_io.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "vsgsim/errors.hpp"

namespace vsgsim {

namespace {

using Json = nlohmann::json;

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

void expect_object(const Json& node, const std::string& path) {
    if (!node.is_object()) {
        throw ConfigError(path, "expected an object");
    }
}

void expect_keys(const Json& obj, const std::string& path,
                 std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed) {
            if (it.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ConfigError(join(path, it.key()), "unknown key");
        }
    }
}

void read_num(const Json& obj, const std::string& path, const char* key,
              double& value) {
    if (!obj.contains(key)) return;
    const Json& node = obj.at(key);
    if (!node.is_number()) {
        throw ConfigError(join(path, key), "expected a number");
    }
    value = node.get<double>();
}

void read_int(const Json& obj, const std::string& path, const char* key,
              std::int64_t& value) {
    if (!obj.contains(key)) return;
    const Json& node = obj.at(key);
    if (!node.is_number_integer()) {
        throw ConfigError(join(path, key), "expected an integer");
    }
    value = node.get<std::int64_t>();
}

void read_bool(const Json& obj, const std::string& path, const char* key,
               bool& value) {
    if (!obj.contains(key)) return;
    const Json& node = obj.at(key);
    if (!node.is_boolean()) {
        throw ConfigError(join(path, key), "expected a boolean");
    }
    value = node.get<bool>();
}

void read_str(const Json& obj, const std::string& path, const char* key,
              std::string& value) {
    if (!obj.contains(key)) return;
    const Json& node = obj.at(key);
    if (!node.is_string()) {
        throw ConfigError(join(path, key), "expected a string");
    }
    value = node.get<std::string>();
}

double require_num(const Json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) {
        throw ConfigError(join(path, key), "required key is missing");
    }
    const Json& node = obj.at(key);
    if (!node.is_number()) {
        throw ConfigError(join(path, key), "expected a number");
    }
    return node.get<double>();
}

Label label_from_string(const std::string& name, const std::string& path) {
    if (name == "S") return Label::S;
    if (name == "M") return Label::M;
    if (name == "L") return Label::L;
    if (name == "VL") return Label::VL;
    throw ConfigError(join(path, name),
                      "unknown output level (expected S, M, L or VL)");
}

void read_mf(const Json& obj, const std::string& path, const char* key,
             GaussianMf& mf) {
    if (!obj.contains(key)) return;
    const Json& node = obj.at(key);
    const std::string at = join(path, key);
    expect_object(node, at);
    expect_keys(node, at, {"center", "sigma"});
    read_num(node, at, "center", mf.center);
    read_num(node, at, "sigma", mf.sigma);
}

void read_scale(const Json& obj, const std::string& path, const char* key,
                OutputScale& scale) {
    if (!obj.contains(key)) return;
    const Json& node = obj.at(key);
    const std::string at = join(path, key);
    expect_object(node, at);
    std::map<Label, double> singletons;
    for (auto it = node.begin(); it != node.end(); ++it) {
        const Label label = label_from_string(it.key(), at);
        if (!it.value().is_number()) {
            throw ConfigError(join(at, it.key()), "expected a number");
        }
        singletons[label] = it.value().get<double>();
    }
    if (singletons.empty()) {
        throw ConfigError(at, "at least one output level is required");
    }
    scale.singletons = std::move(singletons);
    scale.lo = scale.singletons.begin()->second;
    scale.hi = scale.singletons.rbegin()->second;
}

Event event_from_json(const Json& node, const std::string& path) {
    expect_object(node, path);
    Event ev;
    if (!node.contains("t_s")) {
        throw ConfigError(join(path, "t_s"), "required key is missing");
    }
    if (!node.at("t_s").is_number()) {
        throw ConfigError(join(path, "t_s"), "expected a number");
    }
    ev.t_s = node.at("t_s").get<double>();

    std::string kind;
    read_str(node, path, "kind", kind);
    if (kind == "set_p_m") {
        expect_keys(node, path, {"t_s", "kind", "p_m_w"});
        ev.kind = EventKind::set_p_m;
        ev.value_a = require_num(node, path, "p_m_w");
    } else if (kind == "set_local_load") {
        expect_keys(node, path, {"t_s", "kind", "local_load_w"});
        ev.kind = EventKind::set_local_load;
        ev.value_a = require_num(node, path, "local_load_w");
    } else if (kind == "set_grid_impedance") {
        expect_keys(node, path, {"t_s", "kind", "r_g_ohm", "l_g_henry"});
        ev.kind = EventKind::set_grid_impedance;
        ev.value_a = require_num(node, path, "r_g_ohm");
        ev.value_b = require_num(node, path, "l_g_henry");
    } else {
        throw ConfigError(join(path, "kind"),
                          "expected set_p_m, set_local_load or "
                          "set_grid_impedance");
    }
    return ev;
}

Json event_to_json(const Event& ev) {
    Json node;
    node["t_s"] = ev.t_s;
    switch (ev.kind) {
    case EventKind::set_p_m:
        node["kind"] = "set_p_m";
        node["p_m_w"] = ev.value_a;
        break;
    case EventKind::set_local_load:
        node["kind"] = "set_local_load";
        node["local_load_w"] = ev.value_a;
        break;
    case EventKind::set_grid_impedance:
        node["kind"] = "set_grid_impedance";
        node["r_g_ohm"] = ev.value_a;
        node["l_g_henry"] = ev.value_b;
        break;
    }
    return node;
}

Json scale_to_json(const OutputScale& scale) {
    Json node;
    for (const auto& [label, value] : scale.singletons) {
        node[to_string(label)] = value;
    }
    return node;
}

Json mf_to_json(const GaussianMf& mf) {
    return Json{{"center", mf.center}, {"sigma", mf.sigma}};
}

std::string fmt(double v) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

} // namespace

ScenarioFile scenario_from_json(const std::string& text,
                                const std::string& origin) {
    const Json root = Json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (root.is_discarded()) {
        throw ConfigError(origin, "not valid JSON");
    }
    if (!root.is_object()) {
        throw ConfigError(origin, "the top level must be an object");
    }
    expect_keys(root, "",
                {"label", "grid", "vsg", "fuzzy", "sim", "events", "sweep"});

    ScenarioFile file = default_scenario();
    Scenario& s = file.scenario;
    read_str(root, "", "label", s.label);

    if (root.contains("grid")) {
        const Json& grid = root.at("grid");
        expect_object(grid, "grid");
        expect_keys(grid, "grid",
                    {"v_g_v", "r_g_ohm", "l_g_henry", "omega_g_rad_s",
                     "local_load_w"});
        read_num(grid, "grid", "v_g_v", s.v_g_v);
        read_num(grid, "grid", "r_g_ohm", s.r_g_ohm);
        read_num(grid, "grid", "l_g_henry", s.l_g_henry);
        read_num(grid, "grid", "omega_g_rad_s", s.omega_g_rad_s);
        read_num(grid, "grid", "local_load_w", s.local_load_w);
    }

    if (root.contains("vsg")) {
        const Json& vsg = root.at("vsg");
        expect_object(vsg, "vsg");
        expect_keys(vsg, "vsg",
                    {"j_w_s2_per_rad", "d_w_s_per_rad", "k_q_v_per_var",
                     "p_m_w", "q_m_var", "e_0_v", "omega_0_rad_s",
                     "filter_cutoff_rad_s"});
        read_num(vsg, "vsg", "j_w_s2_per_rad", s.vsg.j_w_s2_per_rad);
        read_num(vsg, "vsg", "d_w_s_per_rad", s.vsg.d_w_s_per_rad);
        read_num(vsg, "vsg", "k_q_v_per_var", s.vsg.k_q_v_per_var);
        read_num(vsg, "vsg", "p_m_w", s.vsg.p_m_w);
        read_num(vsg, "vsg", "q_m_var", s.vsg.q_m_var);
        read_num(vsg, "vsg", "e_0_v", s.vsg.e_0_v);
        read_num(vsg, "vsg", "omega_0_rad_s", s.vsg.omega_0_rad_s);
        read_num(vsg, "vsg", "filter_cutoff_rad_s", s.vsg.filter_cutoff_rad_s);
    }

    if (root.contains("fuzzy")) {
        const Json& fz = root.at("fuzzy");
        expect_object(fz, "fuzzy");
        expect_keys(fz, "fuzzy",
                    {"enabled", "s_base_va", "adapt_j", "adapt_d", "adapt_k_q",
                     "output_lag_cutoff_rad_s", "input_mfs", "j_singletons",
                     "d_singletons", "k_q_singletons"});
        read_bool(fz, "fuzzy", "enabled", s.fuzzy.enabled);
        read_num(fz, "fuzzy", "s_base_va", s.fuzzy.s_base_va);
        read_bool(fz, "fuzzy", "adapt_j", s.fuzzy.adapt_j);
        read_bool(fz, "fuzzy", "adapt_d", s.fuzzy.adapt_d);
        read_bool(fz, "fuzzy", "adapt_k_q", s.fuzzy.adapt_k_q);
        read_num(fz, "fuzzy", "output_lag_cutoff_rad_s",
                 s.fuzzy.output_lag_cutoff_rad_s);
        if (fz.contains("input_mfs")) {
            const Json& mfs = fz.at("input_mfs");
            expect_object(mfs, "fuzzy.input_mfs");
            expect_keys(mfs, "fuzzy.input_mfs",
                        {"q_vn", "q_n", "q_z", "rx_m", "rx_h"});
            read_mf(mfs, "fuzzy.input_mfs", "q_vn", s.fuzzy.mfs.q_vn);
            read_mf(mfs, "fuzzy.input_mfs", "q_n", s.fuzzy.mfs.q_n);
            read_mf(mfs, "fuzzy.input_mfs", "q_z", s.fuzzy.mfs.q_z);
            read_mf(mfs, "fuzzy.input_mfs", "rx_m", s.fuzzy.mfs.rx_m);
            read_mf(mfs, "fuzzy.input_mfs", "rx_h", s.fuzzy.mfs.rx_h);
        }
        read_scale(fz, "fuzzy", "j_singletons", s.fuzzy.j_scale);
        read_scale(fz, "fuzzy", "d_singletons", s.fuzzy.d_scale);
        read_scale(fz, "fuzzy", "k_q_singletons", s.fuzzy.k_q_scale);
    }

    if (root.contains("sim")) {
        const Json& sim = root.at("sim");
        expect_object(sim, "sim");
        expect_keys(sim, "sim",
                    {"dt_s", "duration_s", "record_stride", "init"});
        read_num(sim, "sim", "dt_s", s.dt_s);
        read_num(sim, "sim", "duration_s", s.duration_s);
        read_int(sim, "sim", "record_stride", s.record_stride);
        std::string init = s.init == InitMode::cold ? "cold" : "steady_state";
        read_str(sim, "sim", "init", init);
        if (init == "cold") {
            s.init = InitMode::cold;
        } else if (init == "steady_state") {
            s.init = InitMode::steady_state;
        } else {
            throw ConfigError("sim.init", "expected cold or steady_state");
        }
    }

    if (root.contains("events")) {
        const Json& events = root.at("events");
        if (!events.is_array()) {
            throw ConfigError("events", "expected an array");
        }
        for (std::size_t i = 0; i < events.size(); ++i) {
            s.events.push_back(event_from_json(
                events.at(i), "events[" + std::to_string(i) + "]"));
        }
    }

    if (root.contains("sweep")) {
        const Json& sweep = root.at("sweep");
        if (!sweep.is_array()) {
            throw ConfigError("sweep", "expected an array");
        }
        for (std::size_t i = 0; i < sweep.size(); ++i) {
            const Json& node = sweep.at(i);
            const std::string at = "sweep[" + std::to_string(i) + "]";
            expect_object(node, at);
            expect_keys(node, at, {"label", "r_g_ohm", "l_g_henry"});
            SweepEntry entry;
            read_str(node, at, "label", entry.label);
            if (entry.label.empty()) {
                throw ConfigError(join(at, "label"),
                                  "a non-empty label is required");
            }
            entry.r_g_ohm = require_num(node, at, "r_g_ohm");
            entry.l_g_henry = require_num(node, at, "l_g_henry");
            if (!(entry.r_g_ohm >= 0.0)) {
                throw ConfigError(join(at, "r_g_ohm"), "must be >= 0");
            }
            if (!(entry.l_g_henry > 0.0)) {
                throw ConfigError(join(at, "l_g_henry"), "must be > 0");
            }
            file.sweep.push_back(std::move(entry));
        }
    }

    s.validate();
    return file;
}

std::string scenario_to_json(const ScenarioFile& file) {
    const Scenario& s = file.scenario;
    Json root;
    root["label"] = s.label;
    root["grid"] = {{"v_g_v", s.v_g_v},
                    {"r_g_ohm", s.r_g_ohm},
                    {"l_g_henry", s.l_g_henry},
                    {"omega_g_rad_s", s.omega_g_rad_s},
                    {"local_load_w", s.local_load_w}};
    root["vsg"] = {{"j_w_s2_per_rad", s.vsg.j_w_s2_per_rad},
                   {"d_w_s_per_rad", s.vsg.d_w_s_per_rad},
                   {"k_q_v_per_var", s.vsg.k_q_v_per_var},
                   {"p_m_w", s.vsg.p_m_w},
                   {"q_m_var", s.vsg.q_m_var},
                   {"e_0_v", s.vsg.e_0_v},
                   {"omega_0_rad_s", s.vsg.omega_0_rad_s},
                   {"filter_cutoff_rad_s", s.vsg.filter_cutoff_rad_s}};
    root["fuzzy"] = {
        {"enabled", s.fuzzy.enabled},
        {"s_base_va", s.fuzzy.s_base_va},
        {"adapt_j", s.fuzzy.adapt_j},
        {"adapt_d", s.fuzzy.adapt_d},
        {"adapt_k_q", s.fuzzy.adapt_k_q},
        {"output_lag_cutoff_rad_s", s.fuzzy.output_lag_cutoff_rad_s},
        {"input_mfs",
         {{"q_vn", mf_to_json(s.fuzzy.mfs.q_vn)},
          {"q_n", mf_to_json(s.fuzzy.mfs.q_n)},
          {"q_z", mf_to_json(s.fuzzy.mfs.q_z)},
          {"rx_m", mf_to_json(s.fuzzy.mfs.rx_m)},
          {"rx_h", mf_to_json(s.fuzzy.mfs.rx_h)}}},
        {"j_singletons", scale_to_json(s.fuzzy.j_scale)},
        {"d_singletons", scale_to_json(s.fuzzy.d_scale)},
        {"k_q_singletons", scale_to_json(s.fuzzy.k_q_scale)}};
    root["sim"] = {
        {"dt_s", s.dt_s},
        {"duration_s", s.duration_s},
        {"record_stride", s.record_stride},
        {"init", s.init == InitMode::cold ? "cold" : "steady_state"}};
    root["events"] = Json::array();
    for (const Event& ev : s.events) {
        root["events"].push_back(event_to_json(ev));
    }
    root["sweep"] = Json::array();
    for (const SweepEntry& entry : file.sweep) {
        root["sweep"].push_back(Json{{"label", entry.label},
                                     {"r_g_ohm", entry.r_g_ohm},
                                     {"l_g_henry", entry.l_g_henry}});
    }
    return root.dump(2);
}

ScenarioFile default_scenario() {
    return {Scenario{}, {}};
}

ScenarioFile load_scenario(const std::string& path_or_name) {
    const auto& library = bundled_scenarios();
    const auto bundled = library.find(path_or_name);
    if (bundled != library.end()) {
        return scenario_from_json(bundled->second, path_or_name);
    }
    std::ifstream in(path_or_name);
    if (!in) {
        throw ConfigError(path_or_name,
                          "no bundled scenario or readable file by this name");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return scenario_from_json(buffer.str(), path_or_name);
}

void write_trajectory_csv(const RunResult& run, std::ostream& out) {
    out << "t,p_e,q_e,p_grid,q_grid,omega,e_r,theta_r,j,d,k_q\n";
    for (const TrajectorySample& s : run.trajectory) {
        out << fmt(s.t) << ',' << fmt(s.p_e) << ',' << fmt(s.q_e) << ','
            << fmt(s.p_grid) << ',' << fmt(s.q_grid) << ',' << fmt(s.omega)
            << ',' << fmt(s.e_r) << ',' << fmt(s.theta_r) << ',' << fmt(s.j)
            << ',' << fmt(s.d) << ',' << fmt(s.k_q) << '\n';
    }
    if (run.status == RunStatus::aborted) {
        out << "# aborted: " << run.abort_reason << " t=" << fmt(run.abort_t_s)
            << '\n';
    }
}

void write_comparison_csv(const std::vector<ComparisonRow>& rows,
                          std::ostream& out) {
    out << "scenario,r_g,l_g,r_over_x,delta_base_rad,delta_dec_rad,"
           "q_e_ss_base,q_e_ss_dec,p_gain_percent\n";
    for (const ComparisonRow& row : rows) {
        out << row.label << ',' << fmt(row.r_g_ohm) << ','
            << fmt(row.l_g_henry) << ',' << fmt(row.r_over_x) << ','
            << fmt(row.delta_base_rad) << ',' << fmt(row.delta_dec_rad) << ','
            << fmt(row.q_e_ss_base_var) << ',' << fmt(row.q_e_ss_dec_var)
            << ',' << fmt(row.delivery_gain_pct) << '\n';
    }
    for (const ComparisonRow& row : rows) {
        if (!row.settled) {
            out << "# not_settled: " << row.label << '\n';
        }
    }
}

void write_sweep_csv(const std::string& parameter,
                     const std::vector<double>& values,
                     const std::vector<ComparisonRow>& rows,
                     std::ostream& out) {
    out << "parameter,value,scr,scenario,r_g,l_g,r_over_x,delta_base_rad,"
           "delta_dec_rad,q_e_ss_base,q_e_ss_dec,p_gain_percent\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const ComparisonRow& row = rows[i];
        out << parameter << ',' << fmt(values.at(i)) << ',' << fmt(row.scr)
            << ',' << row.label << ',' << fmt(row.r_g_ohm) << ','
            << fmt(row.l_g_henry) << ',' << fmt(row.r_over_x) << ','
            << fmt(row.delta_base_rad) << ',' << fmt(row.delta_dec_rad) << ','
            << fmt(row.q_e_ss_base_var) << ',' << fmt(row.q_e_ss_dec_var)
            << ',' << fmt(row.delivery_gain_pct) << '\n';
    }
    for (const ComparisonRow& row : rows) {
        if (!row.settled) {
            out << "# not_settled: " << row.label << '\n';
        }
    }
}

namespace {

using Setter = std::function<void(Scenario&, double)>;

const std::vector<std::pair<std::string, Setter>>& parameter_table() {
    static const std::vector<std::pair<std::string, Setter>> table = {
        {"grid.v_g_v", [](Scenario& s, double v) { s.v_g_v = v; }},
        {"grid.r_g_ohm", [](Scenario& s, double v) { s.r_g_ohm = v; }},
        {"grid.l_g_henry", [](Scenario& s, double v) { s.l_g_henry = v; }},
        {"grid.omega_g_rad_s",
         [](Scenario& s, double v) { s.omega_g_rad_s = v; }},
        {"grid.local_load_w",
         [](Scenario& s, double v) { s.local_load_w = v; }},
        {"vsg.j_w_s2_per_rad",
         [](Scenario& s, double v) { s.vsg.j_w_s2_per_rad = v; }},
        {"vsg.d_w_s_per_rad",
         [](Scenario& s, double v) { s.vsg.d_w_s_per_rad = v; }},
        {"vsg.k_q_v_per_var",
         [](Scenario& s, double v) { s.vsg.k_q_v_per_var = v; }},
        {"vsg.p_m_w", [](Scenario& s, double v) { s.vsg.p_m_w = v; }},
        {"vsg.q_m_var", [](Scenario& s, double v) { s.vsg.q_m_var = v; }},
        {"vsg.e_0_v", [](Scenario& s, double v) { s.vsg.e_0_v = v; }},
        {"vsg.filter_cutoff_rad_s",
         [](Scenario& s, double v) { s.vsg.filter_cutoff_rad_s = v; }},
        {"fuzzy.s_base_va",
         [](Scenario& s, double v) { s.fuzzy.s_base_va = v; }},
        {"fuzzy.output_lag_cutoff_rad_s",
         [](Scenario& s, double v) { s.fuzzy.output_lag_cutoff_rad_s = v; }},
        {"sim.dt_s", [](Scenario& s, double v) { s.dt_s = v; }},
        {"sim.duration_s", [](Scenario& s, double v) { s.duration_s = v; }},
    };
    return table;
}

} // namespace

bool apply_scenario_parameter(Scenario& scenario, const std::string& path,
                              double value) {
    for (const auto& [name, setter] : parameter_table()) {
        if (name == path) {
            setter(scenario, value);
            return true;
        }
    }
    return false;
}

std::vector<std::string> sweepable_parameters() {
    std::vector<std::string> names;
    names.reserve(parameter_table().size());
    for (const auto& [name, setter] : parameter_table()) {
        names.push_back(name);
    }
    return names;
}

} // namespace vsgsim
