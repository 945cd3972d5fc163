// Acceptance suite: one line per criterion, nonzero exit if any criterion fails.
// Usage: decaylab_acceptance [--criterion N]

#include "fixtures.hpp"
#include "mp_oracle.hpp"

#include <decaylab/decaylab.hpp>
#include <decaylab_cli/cli.hpp>

#include <CLI11.hpp>

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace decaylab;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::string config(const std::string& name) { return std::string(DECAYLAB_CONFIG_DIR) + "/" + name; }

fs::path scratch_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("decaylab_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int cli(std::vector<std::string> args) {
    args.insert(args.begin(), "decaylab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    return cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

std::vector<double> logspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a * std::pow(b / a, static_cast<double>(i) / (n - 1));
    return v;
}

// ---------------------------------------------------------------------------

Outcome lorentz_fixtures() {
    double worst = 0.0;
    bool ok = true;
    for (const auto& c : fixtures::fig1) {
        const double g = lorentz_factor(c.mass, c.momentum);
        const double rounded = std::round(g * 1e4) / 1e4;
        const double caption = std::round(c.gamma * 1e4) / 1e4;
        ok = ok && rounded == caption;
        worst = std::max(worst, std::abs(g - c.gamma));
    }
    return {ok, fmt("5 caption pairs, max |gamma - caption| = %.2e", worst)};
}

Outcome oracle_equivalence() {
    const auto& c = fixtures::fig1[1];
    auto m = fixtures::single(c);
    auto ctx = shifted_kinematics(m, c.momentum);
    const auto t = linspace(2.0, 11.0, 181);
    CurveSeries closed, direct;
    closed.frame = direct.frame = Frame::boosted;
    closed.t = direct.t = t;
    bool converged = true;
    for (double ti : t) {
        closed.values.push_back(survival_boosted(m, ctx, ti).probability);
        const auto d = direct_survival(m, c.momentum, ti);
        converged = converged && d.converged;
        direct.values.push_back(d.probability);
    }
    const auto r = oracle_compare(closed, direct);
    return {converged && r.max_rel_deviation <= 1e-2,
            fmt("max rel deviation %.3e at Gamma t = %.2f (bound 1e-2), oracle converged: %s", r.max_rel_deviation,
                r.location_rel, converged ? "yes" : "no")};
}

Outcome scaling_law() {
    struct Set {
        double M, W, a, p;
    };
    // The literal example (a = 0.04, Omega = 20) violates the monotone-decay constraint.
    const Set sets[] = {{2000, 20, 0.02, 2000}, {2000, 10, 0.04, 2000}};
    bool ok = true;
    std::string detail;
    for (const auto& s : sets) {
        auto m = fixtures::single(s.M, 1.0, s.W, s.a);
        auto ctx = shifted_kinematics(m, s.p);
        auto w = exponential_windows(m, ctx);
        const double xi = w.gates[0].xi_prime;
        const auto mi = w.merged_interval(m);
        if (!(xi <= 1e-3) || !(s.W <= s.M / 20) || !mi) {
            ok = false;
            detail += fmt("[set M=%g Omega=%g: preconditions fail] ", s.M, s.W);
            continue;
        }
        double sup = 0.0, at = 0.0;
        std::size_t used = 0, skipped = 0;
        for (double t : logspace(mi->lo, mi->hi, 4000)) {
            if (!in_validity_domain(m, t)) {
                ++skipped;
                continue;
            }
            ++used;
            const double pp = survival_boosted(m, ctx, t).probability;
            const double p0 = survival_rest(m, t / ctx.gamma);
            const double rel = std::abs(pp - p0) / p0;
            if (rel > sup) {
                sup = rel;
                at = t;
            }
        }
        ok = ok && sup <= 5e-2;
        detail += fmt("[Omega=%g a=%g: xi'=%.2e, sup rel %.3e at t=%.3g over %zu pts, %zu pts before validity start] ",
                      s.W, s.a, xi, sup, at, used, skipped);
    }
    return {ok, detail};
}

struct PeakStats {
    std::size_t peaks = 0;
    double mean_spacing = 0.0;
    std::string spacings;
};

// Dominant maxima: each must be the largest sample within +-halfwidth, which skips
// the small fast ripple riding on the slow oscillation.
PeakStats peak_spacing(const std::vector<double>& t, const std::vector<double>& q, double halfwidth) {
    std::vector<double> peaks;
    const std::size_t n = q.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (t[i] - t.front() < halfwidth || t.back() - t[i] < halfwidth) continue;
        bool top = true;
        for (std::size_t j = i; top && j-- > 0 && t[i] - t[j] <= halfwidth;) top = q[j] < q[i];
        for (std::size_t j = i + 1; top && j < n && t[j] - t[i] <= halfwidth; ++j) top = q[j] <= q[i];
        if (!top) continue;
        // parabolic refinement on a uniform grid
        const double h = t[i + 1] - t[i];
        const double d = q[i - 1] - 2 * q[i] + q[i + 1];
        const double off = d != 0.0 ? 0.5 * (q[i - 1] - q[i + 1]) / d : 0.0;
        peaks.push_back(t[i] + off * h);
    }
    PeakStats s;
    s.peaks = peaks.size();
    for (std::size_t i = 1; i < peaks.size(); ++i) s.spacings += fmt(i == 1 ? "%.3f" : " %.3f", peaks[i] - peaks[i - 1]);
    if (peaks.size() >= 2) s.mean_spacing = (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
    return s;
}

Outcome period_dilation() {
    const auto& c = fixtures::fig1[1];
    const auto csv = scratch_dir() / "curve_b.csv";
    if (cli({"curve", "--config", config("fig1_b.json"), "--which", "boosted", "--out", csv.string()}) != 0)
        return {false, "cmd_curve failed"};
    std::istringstream in(slurp(csv));
    std::string line;
    std::getline(in, line);
    auto m = fixtures::single(c);
    auto ctx = shifted_kinematics(m, c.momentum);
    const double gm = ctx.shifted[0].gamma_minus;
    std::vector<double> t, q;
    while (std::getline(in, line)) {
        double ti = 0, gt = 0, v = 0;
        int valid = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%d", &ti, &gt, &v, &valid) != 4 || !valid) continue;
        t.push_back(ti);
        q.push_back(std::exp(ti / gm) * v);
    }
    const double expect = ctx.gamma * 2 * pi / c.frequency;
    const auto s = peak_spacing(t, q, expect / 4);
    const double rel = s.mean_spacing / expect - 1.0;

    // Diagnostics: carrier of the lower sideband, and the same measurement on 2 <= t <= 15.
    const double e_m = std::hypot(c.momentum, c.mass), e_lo = std::hypot(c.momentum, c.mass - c.frequency);
    const double carrier = 2 * pi / (e_m - e_lo);
    std::vector<double> t15 = linspace(2.0, 15.0, 1301), q15;
    for (double ti : t15) q15.push_back(std::exp(ti / gm) * survival_boosted(m, ctx, ti).probability);
    const auto s15 = peak_spacing(t15, q15, expect / 4);

    return {std::abs(rel) <= 0.02,
            fmt("%zu peaks (spacings %s), mean %.4f vs gamma*2pi/Omega = %.4f (%+.2f%%, bound 2%%); "
                "lower-sideband carrier 2pi/(E(M)-E(M-Omega)) = %.4f; on 2<=t<=15: %.4f (%+.2f%%)",
                s.peaks, s.spacings.c_str(), s.mean_spacing, expect, 100 * rel, carrier, s15.mean_spacing,
                100 * (s15.mean_spacing / expect - 1.0))};
}

Outcome timemap_linearity() {
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 4; ++i) {
        const auto& c = fixtures::fig3[i];
        auto m = fixtures::single(c);
        auto ctx = shifted_kinematics(m, c.momentum);
        auto w = exponential_windows(m, ctx);
        CurveSeries s;
        s.frame = Frame::boosted;
        s.kind = CurveKind::timemap;
        for (double t : linspace(2.0, 120.0, 1181)) {
            const auto ev = evaluate_boosted(m, ctx, t);
            if (!ev.in_validity_domain || !(ev.probability > 0.0) || !(ev.probability <= 1.0)) continue;
            s.t.push_back(t);
            s.values.push_back(invert_survival_rest(m, ev.probability));
        }
        double length = 0.0;
        for (const auto& iv : w.lab_union) length += iv.length();
        const auto fit = linearity_fit(s, w, ctx);
        const double res = fit.max_residual / length;
        const bool pass = fit.relative_slope_error <= 0.02 && res <= 0.02;
        ok = ok && pass;
        detail += fmt("[(%s) slope err %.2e, residual/window %.2e] ", c.label, fit.relative_slope_error, res);
    }
    return {ok, detail};
}

Outcome identity_suite() {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double e1 = 0, e2 = 0, e3 = 0;
    for (int i = 0; i < 10000; ++i) {
        const double M = std::pow(10.0, -1.0 + 5.0 * u(rng));
        const double G = M * std::pow(10.0, -6.0 + 4.7 * u(rng));
        const double p = M * std::pow(10.0, -4.0 + 6.0 * u(rng));
        const auto [lm, lp] = lambda_pm(M, G, p);
        e1 = std::max(e1, std::abs(lm * lp - 2 * M * G) / (2 * M * G));
        const double X = M * M - G * G / 4 + p * p;
        e2 = std::max(e2, std::abs(lp * lp - lm * lm - 4 * X) / (4 * X));
        const auto ups = upsilon(M, G, p);
        const ComplexValue mg(M, -G / 2);
        e3 = std::max(e3, std::abs((ups / 2.0) * (ups / 2.0) + p * p + mg * mg) / (M * M + p * p));
    }
    return {e1 <= 1e-10 && e2 <= 1e-10 && e3 <= 1e-10,
            fmt("10^4 triples: max rel errors %.2e, %.2e, %.2e (bound 1e-10)", e1, e2, e3)};
}

Outcome inequality_suite() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto open01 = [&] {
        double x;
        do x = u(rng);
        while (x == 0.0);
        return x;
    };
    std::size_t bad = 0;
    double w_min = 2, w_max = 0, rm_min = 2, rm_max = 0, rp_min = 2, rp_max = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double M = std::pow(10.0, 4.0 * u(rng));
        const double W = 0.5 * M * open01();
        const double a = 0.5 * open01();
        const double p = M * std::pow(10.0, -3.0 + 6.0 * u(rng));
        const double Wv = w_fn(M, W, a);
        const double g = lorentz_factor(M, p);
        const double rm = g / lorentz_factor(M - W, p);
        const double rp = g / lorentz_factor(M + W, p);
        if (!(1.0 < Wv && Wv < 29.0 / 18.0 && 0.5 < rm && rm < 1.0 && 1.0 < rp && rp < 1.5)) ++bad;
        w_min = std::min(w_min, Wv);
        w_max = std::max(w_max, Wv);
        rm_min = std::min(rm_min, rm);
        rm_max = std::max(rm_max, rm);
        rp_min = std::min(rp_min, rp);
        rp_max = std::max(rp_max, rp);
    }
    return {bad == 0, fmt("%d samples, %zu violations; W in [%.6f, %.6f], g/g- in [%.4f, %.8f], g/g+ in [%.8f, %.4f]", n,
                          bad, w_min, w_max, rm_min, rm_max, rp_min, rp_max)};
}

Outcome restframe_suite() {
    const RestModeSet sets[] = {fixtures::single(fixtures::fig1[1]), fixtures::three_modes(), fixtures::twin_frequency()};
    bool ok = true;
    double init_err = 0, split_err = 0, fd_err = 0;
    std::size_t nonmono = 0;
    for (const auto& m : sets) {
        ok = ok && survival_rest(m, 0.0) == 1.0;
        double expect = 0.0;
        for (const auto& md : m.modes()) expect -= md.weight * md.width;
        init_err = std::max(init_err, std::abs(decay_rate_rest(m, 0.0) - expect));
        const auto grid = logspace(1e-6, 60.0, 2000);
        for (std::size_t i = 1; i < grid.size(); ++i)
            if (!(survival_rest(m, grid[i]) < survival_rest(m, grid[i - 1]))) ++nonmono;
        for (double t : logspace(1e-3, 20.0, 200)) {
            const auto s = survival_rest_split(m, t);
            split_err = std::max(split_err, std::abs(s.total() - survival_rest(m, t)));
            const double h = std::min(1e-4, t / 4);
            const double fd = (-survival_rest(m, t + 2 * h) + 8 * survival_rest(m, t + h) - 8 * survival_rest(m, t - h) +
                               survival_rest(m, t - 2 * h)) /
                              (12 * h);
            const double rate = decay_rate_rest(m, t);
            fd_err = std::max(fd_err, std::abs(fd - rate) / std::abs(rate));
        }
    }
    ok = ok && nonmono == 0 && init_err <= 1e-14 && split_err <= 1e-12 && fd_err <= 1e-8;
    return {ok, fmt("P0(0)=1; %zu monotonicity breaks; |dP0/dt(0) + sum w G| = %.1e; split err %.1e; FD rel err %.1e", nonmono,
                    init_err, split_err, fd_err)};
}

Outcome special_functions() {
    double ej = 0, ey = 0, eh = 0;
    for (double x : logspace(1e-6, 1e4, 1000)) {
        const auto ref = oracle::reference(x);
        ej = std::max(ej, std::abs(bessel_j1(x) - ref.j1) / std::abs(ref.j1));
        ey = std::max(ey, std::abs(bessel_y1(x) - ref.y1) / std::abs(ref.y1));
        eh = std::max(eh, std::abs(struve_h1(x) - ref.h1) / std::abs(ref.h1));
    }
    const double hy = struve_h1_minus_y1(500.0);
    const double rel = std::abs(hy / (2.0 / pi) - 1.0);
    return {ej <= 1e-10 && ey <= 1e-10 && eh <= 1e-10 && rel <= 1e-2,
            fmt("1000 points: max rel err J1 %.2e, Y1 %.2e, H1 %.2e; (H1-Y1)(500)/(2/pi) - 1 = %.2e", ej, ey, eh, rel)};
}

Outcome phi_power_law() {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    const int n = 2000;
    for (int i = 0; i < n; ++i) {
        const double M = std::pow(10.0, 1.0 + 2.0 * u(rng));
        const double W = 0.5 * M * (1e-6 + (1 - 2e-6) * u(rng));
        const double a = 0.5 * (1e-6 + (1 - 2e-6) * u(rng));
        const double p = M * std::pow(10.0, -1.0 + 2.0 * u(rng));
        const double pt = std::pow(10.0, std::log10(200.0) + 2.0 * u(rng));
        const double t = pt / p;
        const double G = 1.0;
        const double lhs = std::abs(ComplexValue(0, p * G / (pi * M * M)) * phi_fn(M, p, W, a, t));
        const double rhs = p * G / (M * M) * w_fn(M, W, a) / std::sqrt(2 * pi * pt);
        worst = std::max(worst, std::abs(lhs / rhs - 1.0));
    }
    return {worst <= 1e-2, fmt("%d random sets with 200 <= pt <= 2e4: max relative mismatch %.3e (bound 1e-2)", n, worst)};
}

Outcome window_mechanics() {
    const WindowParams wp;
    const double ratio = wp.zeta_min / wp.zeta_max;
    bool ok = std::abs(ratio - 1.83e-5) <= 0.005e-5;
    auto merged = [&](double g1) {
        auto m = make_modes({100.0, {{0.5, g1, 0.0, 0.0}, {0.5, 1.0, 0.0, 0.0}}});
        return exponential_windows(m, shifted_kinematics(m, 300.0), wp).merged;
    };
    const bool below = merged(std::nextafter(ratio, 0.0));
    const bool at = merged(ratio);
    const bool above = merged(std::nextafter(ratio, 1.0));
    ok = ok && !below && !at && above;

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t mismatches = 0, checked = 0;
    for (int i = 0; i < 500; ++i) {
        const double M = 50.0 + 1000.0 * u(rng);
        std::vector<double> widths{1.0, 1.0 + 2.0 * u(rng), 3.5 + 2.0 * u(rng)};
        ModeCandidate c{M, {}};
        const double w0 = 0.2 + 0.5 * u(rng), w1 = (1 - w0) * u(rng);
        const double weights[3] = {w0, w1, 1.0 - w0 - w1};
        for (int j = 0; j < 3; ++j) c.modes.push_back({weights[j], widths[j], 0.0, 0.0});
        const ModeValidation v = validate_modes(c);
        if (!v.ok()) continue;
        auto ctx = shifted_kinematics(*v.modes, M * std::pow(10.0, -1.0 + 2.0 * u(rng)));
        auto w = exponential_windows(*v.modes, ctx, {1e-3, 4.0, 1.0, {}});
        for (std::size_t k = 0; k < w.lab_intervals.size(); ++k) {
            ++checked;
            if (w.lab_intervals[k].lo != ctx.gamma * w.rest_intervals[k].lo ||
                w.lab_intervals[k].hi != ctx.gamma * w.rest_intervals[k].hi)
                ++mismatches;
        }
    }
    ok = ok && mismatches == 0 && checked > 0;
    return {ok, fmt("default ratio %.6e; merged below/at/above ratio: %d/%d/%d; covariance mismatches %zu of %zu intervals",
                    ratio, below, at, above, mismatches, checked)};
}

Outcome determinism() {
    std::size_t compared = 0, differ = 0;
    for (const char* which : {"rest", "boosted", "rate", "split"}) {
        std::string ref;
        for (const char* par : {"1", "1", "4", "8"}) {
            const auto out = scratch_dir() / (std::string("det_") + which + "_" + par + ".csv");
            if (cli({"curve", "--config", config("fig1_b.json"), "--which", which, "--parallel", par, "--out", out.string()}) != 0)
                return {false, std::string("cmd_curve failed for ") + which};
            const auto text = slurp(out);
            if (ref.empty())
                ref = text;
            else {
                ++compared;
                if (text != ref) ++differ;
            }
        }
    }
    return {differ == 0 && compared > 0,
            fmt("%zu repeated runs (including --parallel 4 and 8) compared, %zu differ", compared, differ)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decaylab acceptance suite"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion")->check(CLI::Range(1, 12));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria = {
        {1, "Lorentz-factor fixtures", 1.0, lorentz_fixtures},
        {2, "Oracle equivalence (curve b, 181 points)", 120.0, oracle_equivalence},
        {3, "Scaling law over the merged window", 60.0, scaling_law},
        {4, "Period dilation from cmd_curve output", 60.0, period_dilation},
        {5, "Time-map linearity (Fig. 3 a-d)", 120.0, timemap_linearity},
        {6, "Identity suite", 10.0, identity_suite},
        {7, "Inequality suite", 10.0, inequality_suite},
        {8, "Rest-frame suite", 60.0, restframe_suite},
        {9, "Special functions", 30.0, special_functions},
        {10, "Asymptotic Phi law", 60.0, phi_power_law},
        {11, "Window mechanics", 10.0, window_mechanics},
        {12, "Determinism", 60.0, determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.budget_s;
        const bool pass = o.pass && in_time;
        if (!pass) ++failures;
        std::printf("[%s] %2d %s | %s | %.2f s (budget %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), secs,
                    c.budget_s, in_time ? "" : " over budget");
        std::fflush(stdout);
    }
    fs::remove_all(scratch_dir());
    return failures == 0 ? 0 : 1;
}
