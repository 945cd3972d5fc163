#include "decaylab_cli/commands.hpp"

#include "decaylab_cli/output.hpp"

#include <decaylab/oracle.hpp>
#include <decaylab/restframe.hpp>
#include <decaylab/timemap.hpp>
#include <decaylab/version.hpp>

#include <cmath>
#include <limits>
#include <sstream>

namespace decaylab::cli {

using nlohmann::json;

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

struct Loaded {
    RunConfig config;
    RestModeSet modes;
    BoostContext ctx;
    std::optional<std::string> out;
};

Loaded load(const Options& opt) {
    if (opt.config.empty()) throw CliError(exit_code::invalid, "--config is required");
    RunConfig config = load_config(opt.config);
    RestModeSet modes = build_modes(config);
    BoostContext ctx = shifted_kinematics(modes, config.momentum);
    std::optional<std::string> out = opt.out ? opt.out : config.output;
    return {std::move(config), std::move(modes), std::move(ctx), std::move(out)};
}

json interval_json(const Interval& iv) { return json::array({iv.lo, iv.hi}); }

json intervals_json(const std::vector<Interval>& v) {
    json a = json::array();
    for (const auto& iv : v) a.push_back(interval_json(iv));
    return a;
}

json report(const RunConfig& config, json window, json constraints, json results) {
    return {{"params", params_json(config)},
            {"window", std::move(window)},
            {"constraints", std::move(constraints)},
            {"results", std::move(results)},
            {"tool_version", decaylab::version}};
}

std::string csv_line(std::initializer_list<double> values, std::optional<bool> valid = std::nullopt) {
    std::string s;
    for (double v : values) {
        if (!s.empty()) s += ',';
        s += format_double(v);
    }
    if (valid) s += *valid ? ",1" : ",0";
    s += '\n';
    return s;
}

struct WindowState {
    TimeWindow window;
    ConstraintReport constraints;
};

WindowState window_state(const Loaded& L) {
    if (!(L.config.momentum > 0.0))
        throw CliError(exit_code::invalid, "window requires momentum > 0 (the rest frame has no boosted window)");
    WindowState s;
    s.window = exponential_windows(L.modes, L.ctx, L.config.window);
    s.constraints = constraint_report(L.modes, L.ctx, s.window, L.config.window);
    return s;
}

void note(const Options& opt, std::ostream& err, const std::string& msg) {
    if (!opt.quiet) err << msg << '\n';
}

}  // namespace

bool row_valid(const BoostedEvaluation& ev) {
    return ev.in_validity_domain && ev.probability >= 0.0 && ev.probability <= 1.0 + unity_tolerance;
}

json window_json(const RestModeSet& modes, const BoostContext& ctx, const TimeWindow& w) {
    json gates = json::array();
    json excluded = json::array();
    for (const auto& g : w.gates) {
        gates.push_back({{"mode", g.mode}, {"xi_prime", g.xi_prime}, {"admitted", g.admitted}});
        if (!g.admitted) excluded.push_back({{"mode", g.mode}, {"xi_prime", g.xi_prime}});
    }
    json intervals = json::array();
    for (std::size_t i = 0; i < w.admitted.size(); ++i)
        intervals.push_back({{"mode", w.admitted[i]},
                             {"lab", interval_json(w.lab_intervals[i])},
                             {"rest", interval_json(w.rest_intervals[i])}});
    json merged_interval = nullptr;
    if (auto mi = w.merged_interval(modes)) merged_interval = interval_json(*mi);

    json periods_j = nullptr;
    if (!w.admitted.empty()) {
        try {
            const auto p = periods(modes, ctx, w.admitted);
            periods_j = {{"omega_max", p.omega_max},
                         {"commensurate", p.commensurate},
                         {"k", p.k},
                         {"rest_period", p.rest_period ? json(*p.rest_period) : json(nullptr)},
                         {"lab_period", p.lab_period ? json(*p.lab_period) : json(nullptr)}};
        } catch (const std::domain_error&) {
            // no oscillating admitted mode
        }
    }
    return {{"zeta_min", w.zeta_min},
            {"zeta_max", w.zeta_max},
            {"xi_gate", w.xi_gate},
            {"gamma", w.gamma},
            {"gates", gates},
            {"admitted", w.admitted},
            {"excluded", excluded},
            {"intervals", intervals},
            {"union", intervals_json(w.lab_union)},
            {"rest_union", intervals_json(w.rest_union)},
            {"merged", w.merged},
            {"merged_interval", merged_interval},
            {"periods", periods_j}};
}

json constraints_json(const ConstraintReport& r) {
    json a = json::array();
    for (const auto& c : r.checks)
        a.push_back({{"name", c.name},
                     {"description", c.description},
                     {"value", c.value},
                     {"pass_threshold", c.pass_threshold},
                     {"warn_threshold", c.warn_threshold},
                     {"status", to_string(c.status)},
                     {"required", c.required}});
    return a;
}

int cmd_validate(const Options& opt, std::ostream& out, std::ostream& err) {
    if (opt.config.empty()) throw CliError(exit_code::invalid, "--config is required");
    const RunConfig config = load_config(opt.config);
    const auto out_path = opt.out ? opt.out : config.output;
    const ModeValidation v = validate_modes(config.modes, config.validation);
    if (!v.ok()) {
        json violations = json::array();
        std::string names;
        for (const auto& x : v.violations) {
            violations.push_back({{"constraint", x.constraint},
                                  {"mode", x.mode ? json(*x.mode) : json(nullptr)},
                                  {"value", x.value},
                                  {"limit", x.limit},
                                  {"message", x.message}});
            names += (names.empty() ? "" : ", ") + x.constraint;
        }
        write_text(out_path, dump_json(report(config, nullptr, json::array(),
                                              {{"model_valid", false}, {"violations", violations}, {"all_pass", false}})),
                   out);
        err << "invalid mode model: " << names << '\n';
        return exit_code::invalid;
    }
    const RestModeSet& modes = *v.modes;
    if (!(config.momentum > 0.0)) {
        write_text(out_path,
                   dump_json(report(config, nullptr, json::array(),
                                    {{"model_valid", true}, {"rest_frame", true}, {"all_pass", true}})),
                   out);
        return exit_code::ok;
    }
    const BoostContext ctx = shifted_kinematics(modes, config.momentum);
    const TimeWindow w = exponential_windows(modes, ctx, config.window);
    const ConstraintReport r = constraint_report(modes, ctx, w, config.window);
    const bool pass = r.all_pass();
    write_text(out_path,
               dump_json(report(config, window_json(modes, ctx, w), constraints_json(r),
                                {{"model_valid", true}, {"rest_frame", false}, {"all_pass", pass}})),
               out);
    if (!pass) {
        std::string names;
        for (const auto& c : r.checks)
            if (c.required && c.status != CheckStatus::pass) names += (names.empty() ? "" : ", ") + c.name;
        err << "window constraints not satisfied: " << names << '\n';
        return exit_code::bound_exceeded;
    }
    return exit_code::ok;
}

int cmd_curve(const Options& opt, std::ostream& out, std::ostream&) {
    const Loaded L = load(opt);
    const auto t = L.config.grid.values();
    const double g1 = L.modes[0].width;
    const bool boosted = L.config.momentum > 0.0 && (opt.which == Which::boosted || opt.which == Which::split);
    const bool with_split = opt.which == Which::split;

    struct Row {
        double value = nan, exp = nan, osc = nan;
        bool valid = true;
    };
    std::vector<Row> rows(t.size());
    std::optional<TimeWindow> window;
    if (boosted && with_split) window = exponential_windows(L.modes, L.ctx, L.config.window);

    parallel_for(t.size(), opt.parallel, [&](std::size_t i) {
        Row& r = rows[i];
        const double ti = t[i];
        if (!boosted) {
            switch (opt.which) {
                case Which::rate: r.value = decay_rate_rest(L.modes, ti); break;
                case Which::split: {
                    const auto s = survival_rest_split(L.modes, ti);
                    r.value = s.total();
                    r.exp = s.exponential;
                    r.osc = s.oscillating;
                    break;
                }
                default: r.value = survival_rest(L.modes, ti); break;
            }
            return;
        }
        if (!(ti > 0.0)) {
            r.valid = false;
            return;
        }
        const auto ev = evaluate_boosted(L.modes, L.ctx, ti);
        if (!with_split) {
            r.value = ev.probability;
            r.valid = row_valid(ev);
            return;
        }
        const auto active = window->active_modes(ti);
        if (active.empty()) {
            r.valid = false;
            return;
        }
        const auto s = boosted_split(L.modes, L.ctx, ti, active);
        r.value = s.total();
        r.exp = s.exponential;
        r.osc = s.oscillating;
        r.valid = ev.in_validity_domain && r.value >= 0.0 && r.value <= 1.0 + unity_tolerance;
    });

    std::string csv = "t,gamma_t,value";
    if (with_split) csv += ",value_exp,value_osc";
    if (boosted) csv += ",valid";
    csv += '\n';
    for (std::size_t i = 0; i < t.size(); ++i) {
        const Row& r = rows[i];
        const std::optional<bool> valid = boosted ? std::optional<bool>(r.valid) : std::nullopt;
        if (with_split)
            csv += csv_line({t[i], g1 * t[i], r.value, r.exp, r.osc}, valid);
        else
            csv += csv_line({t[i], g1 * t[i], r.value}, valid);
    }
    write_text(L.out, csv, out);
    return exit_code::ok;
}

int cmd_window(const Options& opt, std::ostream& out, std::ostream& err) {
    const Loaded L = load(opt);
    const WindowState s = window_state(L);
    const bool pass = s.constraints.all_pass();
    json results = {{"all_pass", pass},
                    {"admitted_count", s.window.admitted.size()},
                    {"excluded_count", s.window.excluded().size()}};
    write_text(L.out, dump_json(report(L.config, window_json(L.modes, L.ctx, s.window), constraints_json(s.constraints), results)),
               out);
    if (!pass) note(opt, err, "note: window constraint checks do not all pass (see constraints)");
    return exit_code::ok;
}

int cmd_phi(const Options& opt, std::ostream& out, std::ostream& err) {
    const Loaded L = load(opt);
    const auto t = L.config.grid.values();
    const bool rest = !(L.config.momentum > 0.0);

    TimeWindow window;
    json window_j = nullptr;
    json constraints_j = json::array();
    if (rest) {
        window.lab_union = {{L.config.grid.t_min, L.config.grid.t_max}};
    } else {
        const WindowState s = window_state(L);
        window = s.window;
        window_j = window_json(L.modes, L.ctx, window);
        constraints_j = constraints_json(s.constraints);
    }

    enum class Status { ok, outside_validity, out_of_range };
    struct Row {
        double phi = nan;
        Status status = Status::ok;
    };
    std::vector<Row> rows(t.size());
    parallel_for(t.size(), opt.parallel, [&](std::size_t i) {
        Row& r = rows[i];
        double prob = 0.0;
        if (rest) {
            prob = survival_rest(L.modes, t[i]);
        } else {
            if (!(t[i] > 0.0)) {
                r.status = Status::outside_validity;
                return;
            }
            const auto ev = evaluate_boosted(L.modes, L.ctx, t[i]);
            if (!ev.in_validity_domain) {
                r.status = Status::outside_validity;
                return;
            }
            prob = ev.probability;
        }
        if (!(prob > 0.0) || !(prob <= 1.0)) {
            r.status = Status::out_of_range;
            return;
        }
        try {
            r.phi = invert_survival_rest(L.modes, prob);
        } catch (const std::domain_error&) {
            r.status = Status::out_of_range;
        }
    });

    CurveSeries series;
    series.frame = rest ? Frame::rest : Frame::boosted;
    series.kind = CurveKind::timemap;
    std::string csv = "t,phi_p,t_over_gamma,residual\n";
    std::size_t outside = 0, out_of_range = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const Row& r = rows[i];
        if (r.status == Status::outside_validity) {
            ++outside;
            continue;
        }
        if (r.status == Status::out_of_range) {
            ++out_of_range;
            continue;
        }
        const double tg = t[i] / L.ctx.gamma;
        csv += csv_line({t[i], r.phi, tg, r.phi - tg});
        series.t.push_back(t[i]);
        series.values.push_back(r.phi);
    }
    write_text(L.out, csv, out);

    json fit_j = nullptr;
    std::string fit_error;
    if (!rest && window.empty()) {
        fit_error = "phi: window is empty (no mode passes the xi' gate), nothing to fit";
    } else {
        try {
            const auto fit = linearity_fit(series, window, L.ctx);
            double window_length = 0.0;
            for (const auto& iv : window.lab_union) window_length += iv.length();
            fit_j = {{"slope", fit.slope},
                     {"intercept", fit.intercept},
                     {"max_residual", fit.max_residual},
                     {"max_scaling_residual", fit.max_scaling_residual},
                     {"fit_interval", interval_json(fit.fit_interval)},
                     {"expected_slope", fit.expected_slope},
                     {"relative_slope_error", fit.relative_slope_error},
                     {"points", fit.points},
                     {"window_length", window_length}};
        } catch (const std::invalid_argument& e) {
            fit_error = e.what();
        }
    }
    json results = {{"fit", fit_j},
                    {"rows_emitted", series.t.size()},
                    {"rows_omitted", outside + out_of_range},
                    {"omitted_outside_validity", outside},
                    {"omitted_out_of_range", out_of_range}};
    if (!fit_error.empty()) results["fit_error"] = fit_error;
    const std::string sidecar = dump_json(report(L.config, window_j, constraints_j, results));
    if (L.out)
        write_text(*L.out + ".fit.json", sidecar, out);
    else if (!opt.quiet)
        err << sidecar;
    if (!fit_error.empty()) {
        err << fit_error << '\n';
        return exit_code::invalid;
    }
    return exit_code::ok;
}

int cmd_compare(const Options& opt, std::ostream& out, std::ostream& err) {
    const Loaded L = load(opt);
    const auto grid = L.config.grid.values();
    const bool rest = !(L.config.momentum > 0.0);

    json window_j = nullptr;
    json constraints_j = json::array();
    std::vector<double> t;
    if (rest) {
        t = grid;
    } else {
        const WindowState s = window_state(L);
        window_j = window_json(L.modes, L.ctx, s.window);
        constraints_j = constraints_json(s.constraints);
        for (double ti : grid)
            if (ti > 0.0 && s.window.contains(ti) && row_valid(evaluate_boosted(L.modes, L.ctx, ti))) t.push_back(ti);
    }
    if (t.size() < 2)
        throw CliError(exit_code::invalid, "compare: fewer than 2 valid grid points inside the window");
    try {
        check_quadrature_spec(L.modes, L.config.oracle);
    } catch (const std::invalid_argument& e) {
        throw CliError(exit_code::invalid, e.what());
    }

    std::vector<double> closed(t.size()), direct(t.size()), qerr(t.size()), terr(t.size());
    std::vector<char> converged(t.size(), 1);
    parallel_for(t.size(), opt.parallel, [&](std::size_t i) {
        closed[i] = rest ? survival_rest(L.modes, t[i]) : evaluate_boosted(L.modes, L.ctx, t[i]).probability;
        const auto d = direct_survival(L.modes, L.config.momentum, t[i], L.config.oracle);
        direct[i] = d.probability;
        qerr[i] = d.quadrature_error;
        terr[i] = d.truncation_error;
        converged[i] = d.converged ? 1 : 0;
    });

    const Frame frame = rest ? Frame::rest : Frame::boosted;
    const CurveSeries closed_s{t, closed, frame, CurveKind::probability, "closed form"};
    const CurveSeries direct_s{t, direct, frame, CurveKind::probability, "direct quadrature"};
    const ComparisonReport r = oracle_compare(closed_s, direct_s);

    bool all_converged = true;
    double max_q = 0.0, max_t = 0.0;
    json rows = json::array();
    for (std::size_t i = 0; i < t.size(); ++i) {
        all_converged = all_converged && converged[i];
        max_q = std::max(max_q, qerr[i]);
        max_t = std::max(max_t, terr[i]);
        rows.push_back({{"t", t[i]},
                        {"closed", closed[i]},
                        {"direct", direct[i]},
                        {"quadrature_error", qerr[i]},
                        {"truncation_error", terr[i]},
                        {"converged", converged[i] != 0}});
    }
    const bool within = r.max_rel_deviation <= L.config.bound;
    json results = {{"t_min", r.t_min},
                    {"t_max", r.t_max},
                    {"grid_size", r.grid_size},
                    {"max_abs_deviation", r.max_abs_deviation},
                    {"max_rel_deviation", r.max_rel_deviation},
                    {"location_abs", r.location_abs},
                    {"location_rel", r.location_rel},
                    {"bound", L.config.bound},
                    {"within_bound", within},
                    {"converged", all_converged},
                    {"max_quadrature_error", max_q},
                    {"max_truncation_error", max_t},
                    {"rows", rows}};
    write_text(L.out, dump_json(report(L.config, window_j, constraints_j, results)), out);

    if (!all_converged) {
        err << "oracle did not converge: max quadrature error " << format_double(max_q) << ", max truncation error "
            << format_double(max_t) << '\n';
        return exit_code::no_convergence;
    }
    if (!within) {
        err << "max relative deviation " << format_double(r.max_rel_deviation) << " at t=" << format_double(r.location_rel)
            << " exceeds bound " << format_double(L.config.bound) << '\n';
        return exit_code::bound_exceeded;
    }
    note(opt, err,
         "max relative deviation " + format_double(r.max_rel_deviation) + " within bound " + format_double(L.config.bound));
    return exit_code::ok;
}

}  // namespace decaylab::cli
