#include "decaylab/window.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace decaylab {

double w_fn(double mass, double frequency, double amplitude) {
    if (!(mass > 0.0)) throw std::domain_error("w_fn: mass must be positive");
    if (!(frequency >= 0.0) || !(frequency < mass)) throw std::domain_error("w_fn: requires 0 <= Omega < M");
    if (!(amplitude >= 0.0) || amplitude > 0.5) throw std::domain_error("w_fn: requires 0 <= a <= 1/2");
    const double r2 = (frequency / mass) * (frequency / mass);
    const double d = 1.0 - r2;
    return 1.0 + amplitude * r2 * (3.0 - r2) / (d * d);
}

double xi_prime(const RestModeSet& modes, const BoostContext& ctx, std::size_t j) {
    const double M = modes.mass();
    const double p = ctx.momentum;
    if (!(ctx.gamma > 1.0) || !(p > 0.0))
        throw std::domain_error("xi_prime: nonrelativistic limit gamma -> 1 is excluded");
    const Mode& mj = modes[j];
    if (!(mj.amplitude < 0.5)) throw std::domain_error("xi_prime: gate diverges as a_j -> 1/2");
    const double beta = p / std::hypot(M, p);
    double sum = 0.0;
    for (const Mode& l : modes.modes()) sum += l.weight * l.width * w_fn(M, l.frequency, l.amplitude);
    return std::sqrt(mj.width / (std::numbers::pi * M) * beta) * sum / (2.0 * M * mj.weight * (1.0 - 2.0 * mj.amplitude));
}

void check_window_params(const WindowParams& params) {
    if (!(params.zeta_min > 0.0) || !(params.zeta_max > params.zeta_min) || !std::isfinite(params.zeta_max))
        throw std::invalid_argument("window: requires 0 < zeta_min < zeta_max");
    if (!(params.xi_gate > 0.0)) throw std::invalid_argument("window: xi_gate must be positive");
    if (!(params.checks.pass >= params.checks.warn) || !(params.checks.warn > 0.0))
        throw std::invalid_argument("window: requires pass >= warn > 0 thresholds");
}

std::vector<Interval> interval_union(std::vector<Interval> intervals) {
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
    std::vector<Interval> out;
    for (const auto& iv : intervals) {
        if (!out.empty() && iv.lo <= out.back().hi)
            out.back().hi = std::max(out.back().hi, iv.hi);
        else
            out.push_back(iv);
    }
    return out;
}

std::vector<std::size_t> TimeWindow::active_modes(double t) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < admitted.size(); ++i)
        if (lab_intervals[i].contains(t)) out.push_back(admitted[i]);
    return out;
}

std::vector<ModeGate> TimeWindow::excluded() const {
    std::vector<ModeGate> out;
    for (const auto& g : gates)
        if (!g.admitted) out.push_back(g);
    return out;
}

std::optional<Interval> TimeWindow::merged_interval(const RestModeSet& modes) const {
    if (!merged || admitted.empty()) return std::nullopt;
    const double g_first = modes[admitted.front()].width;
    const double g_last = modes[admitted.back()].width;
    return Interval{gamma * (2.0 * zeta_min / g_last), gamma * (2.0 * zeta_max / g_first)};
}

bool TimeWindow::contains(double t) const {
    return std::any_of(lab_union.begin(), lab_union.end(), [&](const Interval& iv) { return iv.contains(t); });
}

TimeWindow exponential_windows(const RestModeSet& modes, const BoostContext& ctx, const WindowParams& params) {
    check_window_params(params);
    TimeWindow w;
    w.zeta_min = params.zeta_min;
    w.zeta_max = params.zeta_max;
    w.xi_gate = params.xi_gate;
    w.gamma = ctx.gamma;
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const double xi = xi_prime(modes, ctx, j);
        const bool ok = xi <= params.xi_gate;
        w.gates.push_back({j, xi, ok});
        if (!ok) continue;
        const double width = modes[j].width;
        const Interval rest{2.0 * params.zeta_min / width, 2.0 * params.zeta_max / width};
        w.admitted.push_back(j);
        w.rest_intervals.push_back(rest);
        w.lab_intervals.push_back({ctx.gamma * rest.lo, ctx.gamma * rest.hi});
    }
    w.lab_union = interval_union(w.lab_intervals);
    w.rest_union = interval_union(w.rest_intervals);

    const double ratio = params.zeta_min / params.zeta_max;
    w.merged = !w.admitted.empty();
    for (std::size_t i = 0; i + 1 < w.admitted.size(); ++i)
        if (!(modes[w.admitted[i]].width / modes[w.admitted[i + 1]].width > ratio)) w.merged = false;
    return w;
}

const char* to_string(CheckStatus status) {
    switch (status) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::warn: return "warn";
        case CheckStatus::fail: return "fail";
    }
    return "fail";
}

bool ConstraintReport::all_pass() const {
    if (checks.empty()) return false;
    return std::all_of(checks.begin(), checks.end(),
                       [](const ConstraintCheck& c) { return !c.required || c.status == CheckStatus::pass; });
}

const ConstraintCheck* ConstraintReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

ConstraintCheck tiered(std::string name, std::string description, double value, const CheckThresholds& th,
                       bool required) {
    ConstraintCheck c{std::move(name), std::move(description), value, th.pass, th.warn, CheckStatus::fail, required};
    if (value >= th.pass)
        c.status = CheckStatus::pass;
    else if (value >= th.warn)
        c.status = CheckStatus::warn;
    return c;
}

}  // namespace

ConstraintReport constraint_report(const RestModeSet& modes, const BoostContext& ctx, const TimeWindow& window,
                                   const WindowParams& params) {
    ConstraintReport r;
    if (window.empty()) {
        r.checks.push_back({"window_nonempty", "at least one mode passes the xi' gate", 0.0, 1.0, 1.0,
                            CheckStatus::fail, true});
        return r;
    }
    const double g = ctx.gamma;
    const double zmin = window.zeta_min;
    const double g_last = modes[window.admitted.back()].width;
    const double g1 = modes.min_width();
    const double M = modes.mass();
    const double t_start = 2.0 * zmin * g / g_last;

    ConstraintCheck width{"width_ratio", "20 zeta_min gamma > Gamma_last / Gamma_1", 20.0 * zmin * g * g1 / g_last,
                          1.0, 1.0, CheckStatus::fail, false};
    if (width.value > 1.0) width.status = CheckStatus::pass;
    auto mass = tiered("mass_scale", "2 zeta_min gamma >> Gamma_last / (M - Omega_max)",
                       2.0 * zmin * g * (M - modes.max_frequency()) / g_last, params.checks, false);

    ConstraintCheck start{"validity_start", "window start inside the closed-form validity domain", t_start,
                          0.1 / g1, 0.1 / g1, CheckStatus::fail, true};
    if (width.status == CheckStatus::pass || mass.status == CheckStatus::pass)
        start.status = CheckStatus::pass;
    else if (mass.status == CheckStatus::warn)
        start.status = CheckStatus::warn;

    r.checks.push_back(width);
    r.checks.push_back(mass);
    r.checks.push_back(start);
    r.checks.push_back(tiered("momentum", "2 zeta_min gamma sqrt(gamma^2 - 1) >> Gamma_last / M",
                              2.0 * zmin * g * std::sqrt(std::max(0.0, (g - 1.0) * (g + 1.0))) * M / g_last,
                              params.checks, true));
    r.checks.push_back(tiered("pt_window_start", "p t >> 1 at the window start", ctx.momentum * t_start,
                              params.checks, true));
    return r;
}

PeriodReport periods_for(std::span<const double> frequencies, double gamma) {
    if (frequencies.empty()) throw std::domain_error("periods: no oscillating active mode");
    PeriodReport r;
    r.omega_max = *std::max_element(frequencies.begin(), frequencies.end());
    r.commensurate = true;
    for (double f : frequencies) {
        if (!(f > 0.0)) throw std::domain_error("periods: frequencies must be positive");
        const double ratio = r.omega_max / f;
        const double k = std::round(ratio);
        if (std::abs(ratio - k) > 1e-9 * ratio) {
            r.commensurate = false;
            r.k.clear();
            break;
        }
        r.k.push_back(static_cast<long>(k));
    }
    if (r.commensurate) {
        r.rest_period = 2.0 * std::numbers::pi / r.omega_max;
        r.lab_period = gamma * *r.rest_period;
    }
    return r;
}

PeriodReport periods(const RestModeSet& modes, const BoostContext& ctx, std::span<const std::size_t> active) {
    std::vector<double> freqs;
    for (std::size_t j : active) {
        const Mode& m = modes[j];
        if (m.amplitude > 0.0 && m.frequency > 0.0) freqs.push_back(m.frequency);
    }
    return periods_for(freqs, ctx.gamma);
}

}  // namespace decaylab
