#include "decaylab_cli/config.hpp"

#include <decaylab/kinematics.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace decaylab::cli {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw CliError(exit_code::invalid, "config: " + what); }

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) invalid(where + " must be an object");
    for (const auto& [key, _] : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
            invalid("unknown key '" + key + "' in " + where);
    }
}

double number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) invalid("missing '" + std::string(key) + "' in " + where);
    const json& v = obj.at(key);
    if (!v.is_number()) invalid("'" + std::string(key) + "' in " + where + " must be a number");
    return v.get<double>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
    return obj.contains(key) ? number(obj, key, where) : fallback;
}

std::size_t count(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) invalid("missing '" + std::string(key) + "' in " + where);
    const json& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        invalid("'" + std::string(key) + "' in " + where + " must be a nonnegative integer");
    return v.get<std::size_t>();
}

}  // namespace

std::vector<double> GridSpec::values() const {
    std::vector<double> t(points);
    const double n = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / n;
        t[i] = spacing == Spacing::linear ? t_min + (t_max - t_min) * f
                                          : std::exp(std::log(t_min) + (std::log(t_max) - std::log(t_min)) * f);
    }
    t.front() = t_min;
    t.back() = t_max;
    return t;
}

RunConfig parse_config(const json& doc) {
    check_keys(doc, {"description", "modes", "momentum", "grid", "window", "oracle", "output"}, "config");
    RunConfig c;
    if (doc.contains("description")) {
        if (!doc["description"].is_string()) invalid("'description' must be a string");
        c.description = doc["description"].get<std::string>();
    }

    if (!doc.contains("modes")) invalid("missing 'modes'");
    const json& m = doc["modes"];
    check_keys(m, {"mass", "modes", "narrow_width_threshold"}, "modes");
    c.modes.mass = number(m, "mass", "modes");
    c.validation.narrow_width_threshold =
        number_or(m, "narrow_width_threshold", c.validation.narrow_width_threshold, "modes");
    if (!m.contains("modes") || !m["modes"].is_array()) invalid("'modes.modes' must be an array");
    for (std::size_t i = 0; i < m["modes"].size(); ++i) {
        const json& e = m["modes"][i];
        const std::string where = "modes.modes[" + std::to_string(i) + "]";
        check_keys(e, {"weight", "width", "frequency", "amplitude"}, where);
        c.modes.modes.push_back({number(e, "weight", where), number(e, "width", where),
                                 number_or(e, "frequency", 0.0, where), number_or(e, "amplitude", 0.0, where)});
    }

    c.momentum = number_or(doc, "momentum", 0.0, "config");
    if (!std::isfinite(c.momentum) || c.momentum < 0.0) invalid("'momentum' must be finite and >= 0");

    if (!doc.contains("grid")) invalid("missing 'grid'");
    const json& g = doc["grid"];
    check_keys(g, {"t_min", "t_max", "points", "spacing"}, "grid");
    c.grid.t_min = number(g, "t_min", "grid");
    c.grid.t_max = number(g, "t_max", "grid");
    c.grid.points = count(g, "points", "grid");
    if (g.contains("spacing")) {
        const json& s = g["spacing"];
        if (s == "linear")
            c.grid.spacing = Spacing::linear;
        else if (s == "log")
            c.grid.spacing = Spacing::log;
        else
            invalid("'grid.spacing' must be \"linear\" or \"log\"");
    }
    if (c.grid.points < 2) invalid("grid needs at least 2 points");
    if (!std::isfinite(c.grid.t_min) || !std::isfinite(c.grid.t_max) || c.grid.t_min < 0.0 ||
        !(c.grid.t_max > c.grid.t_min))
        invalid("grid requires 0 <= t_min < t_max");
    if (c.grid.spacing == Spacing::log && !(c.grid.t_min > 0.0)) invalid("log grid requires t_min > 0");

    if (doc.contains("window")) {
        const json& w = doc["window"];
        check_keys(w, {"zeta_min", "zeta_max", "xi_gate", "pass", "warn"}, "window");
        c.window.zeta_min = number_or(w, "zeta_min", c.window.zeta_min, "window");
        c.window.zeta_max = number_or(w, "zeta_max", c.window.zeta_max, "window");
        c.window.xi_gate = number_or(w, "xi_gate", c.window.xi_gate, "window");
        c.window.checks.pass = number_or(w, "pass", c.window.checks.pass, "window");
        c.window.checks.warn = number_or(w, "warn", c.window.checks.warn, "window");
    }
    try {
        check_window_params(c.window);
    } catch (const std::invalid_argument& e) {
        invalid(e.what());
    }

    if (doc.contains("oracle")) {
        const json& o = doc["oracle"];
        check_keys(o,
                   {"half_width_factor", "include_negative_mass", "abs_tol", "rel_tol", "phase_step",
                    "max_evaluations", "bound"},
                   "oracle");
        c.oracle.half_width_factor = number_or(o, "half_width_factor", c.oracle.half_width_factor, "oracle");
        if (o.contains("include_negative_mass")) {
            if (!o["include_negative_mass"].is_boolean()) invalid("'oracle.include_negative_mass' must be a boolean");
            c.oracle.include_negative_mass = o["include_negative_mass"].get<bool>();
        }
        c.oracle.abs_tol = number_or(o, "abs_tol", c.oracle.abs_tol, "oracle");
        c.oracle.rel_tol = number_or(o, "rel_tol", c.oracle.rel_tol, "oracle");
        c.oracle.phase_step = number_or(o, "phase_step", c.oracle.phase_step, "oracle");
        if (o.contains("max_evaluations")) c.oracle.max_evaluations = count(o, "max_evaluations", "oracle");
        c.bound = number_or(o, "bound", c.bound, "oracle");
    }
    if (!(c.bound >= 0.0)) invalid("'oracle.bound' must be >= 0");

    if (doc.contains("output")) {
        if (!doc["output"].is_string()) invalid("'output' must be a string");
        c.output = doc["output"].get<std::string>();
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError(exit_code::io, "cannot open config '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw CliError(exit_code::io, "cannot read config '" + path + "'");
    json doc;
    try {
        doc = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw CliError(exit_code::invalid, std::string("config: malformed JSON: ") + e.what());
    }
    return parse_config(doc);
}

RestModeSet build_modes(const RunConfig& config) {
    try {
        return make_modes(config.modes, config.validation);
    } catch (const InvalidModel& e) {
        std::string names;
        for (const auto& v : e.violations()) {
            if (!names.empty()) names += ", ";
            names += v.constraint;
        }
        throw CliError(exit_code::invalid, "invalid mode model: " + names);
    }
}

json params_json(const RunConfig& c) {
    json modes = json::array();
    for (const auto& m : c.modes.modes)
        modes.push_back({{"weight", m.weight}, {"width", m.width}, {"frequency", m.frequency}, {"amplitude", m.amplitude}});
    return {
        {"description", c.description},
        {"modes", {{"mass", c.modes.mass}, {"modes", modes}, {"narrow_width_threshold", c.validation.narrow_width_threshold}}},
        {"momentum", c.momentum},
        {"grid",
         {{"t_min", c.grid.t_min},
          {"t_max", c.grid.t_max},
          {"points", c.grid.points},
          {"spacing", c.grid.spacing == Spacing::linear ? "linear" : "log"}}},
        {"window",
         {{"zeta_min", c.window.zeta_min},
          {"zeta_max", c.window.zeta_max},
          {"xi_gate", c.window.xi_gate},
          {"pass", c.window.checks.pass},
          {"warn", c.window.checks.warn}}},
        {"oracle",
         {{"half_width_factor", c.oracle.half_width_factor},
          {"include_negative_mass", c.oracle.include_negative_mass},
          {"abs_tol", c.oracle.abs_tol},
          {"rel_tol", c.oracle.rel_tol},
          {"phase_step", c.oracle.phase_step},
          {"max_evaluations", c.oracle.max_evaluations},
          {"bound", c.bound}}},
    };
}

}  // namespace decaylab::cli
