#include "decaylab/oracle.hpp"

#include "decaylab/quadrature.hpp"
#include "decaylab/restframe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace decaylab {

namespace {

struct Range {
    double lo;
    double hi;
    double nominal_lo;
};

Range mass_range(const RestModeSet& modes, const QuadratureSpec& spec) {
    const double hw = spec.half_width_factor * std::max(modes.max_width(), modes.max_frequency());
    const double lo = modes.mass() - hw;
    return {spec.include_negative_mass ? lo : std::max(lo, 0.0), modes.mass() + hw, lo};
}

// Lorentzian probability mass of L(m - c; Γ)/π outside [lo, hi].
double outside_mass(double c, double width, double lo, double hi) {
    const double h = 0.5 * width;
    const double above = 0.5 - std::atan((hi - c) / h) / std::numbers::pi;
    const double below = 0.5 - std::atan((c - lo) / h) / std::numbers::pi;
    return above + below;
}

void add_phase_points(std::vector<double>& pts, double p, double t, double step, double m_lo, double m_hi) {
    if (!(t > 0.0)) return;
    // Phase along m >= 0 runs from E(max(m_lo,0)) to E(m_hi); mirror for m < 0.
    auto emit = [&](double m_from, double m_to, double sign) {
        const double e_from = std::hypot(p, m_from) * t;
        const double e_to = std::hypot(p, m_to) * t;
        const auto k0 = static_cast<long long>(std::floor(e_from / step)) + 1;
        const auto k1 = static_cast<long long>(std::floor(e_to / step));
        for (long long k = k0; k <= k1; ++k) {
            const double e = static_cast<double>(k) * step / t;
            const double m = std::sqrt(std::max(0.0, (e - p) * (e + p)));
            pts.push_back(sign * m);
        }
    };
    if (m_hi > 0.0) emit(std::max(m_lo, 0.0), m_hi, 1.0);
    if (m_lo < 0.0) emit(std::max(-m_hi, 0.0), -m_lo, -1.0);
}

}  // namespace

void check_quadrature_spec(const RestModeSet& modes, const QuadratureSpec& spec) {
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0)) throw std::invalid_argument("quadrature: tolerances must be positive");
    if (!(spec.phase_step > 0.0)) throw std::invalid_argument("quadrature: phase step must be positive");
    const Range r = mass_range(modes, spec);
    for (const Mode& m : modes.modes()) {
        const double need = 20.0 * m.width;
        const double centers[3] = {modes.mass() - m.frequency, modes.mass(), modes.mass() + m.frequency};
        for (double c : centers) {
            if (r.hi - c < need || c - r.nominal_lo < need)
                throw std::invalid_argument("quadrature: mass range does not clear a Lorentzian center by 40 half-widths");
        }
    }
}

AmplitudeResult direct_boosted_amplitude(const RestModeSet& modes, double momentum, double t, const QuadratureSpec& spec) {
    if (!(t >= 0.0)) throw std::domain_error("direct_boosted_amplitude: t must be >= 0");
    if (!(momentum >= 0.0)) throw std::domain_error("direct_boosted_amplitude: p must be >= 0");
    check_quadrature_spec(modes, spec);
    const Range r = mass_range(modes, spec);

    std::vector<double> pts;
    const double M = modes.mass();
    pts.push_back(M);
    pts.push_back(0.0);
    for (const Mode& m : modes.modes()) {
        if (m.frequency > 0.0 && m.amplitude > 0.0) {
            pts.push_back(M - m.frequency);
            pts.push_back(M + m.frequency);
        }
    }
    add_phase_points(pts, momentum, t, spec.phase_step, r.lo, r.hi);
    pts = quad::clip_breakpoints(std::move(pts), r.lo, r.hi);

    const double p2 = momentum * momentum;
    auto f = [&](double m) {
        return mdd_analytic(modes, m) * std::polar(1.0, -std::sqrt(p2 + m * m) * t);
    };
    quad::Budget budget;
    budget.max_evaluations = spec.max_evaluations;
    const auto res = quad::integrate(f, std::span<const double>(pts), spec.abs_tol, budget);

    AmplitudeResult out;
    out.amplitude = res.value;
    out.quadrature_error = res.error;
    out.evaluations = res.evaluations;
    out.subintervals = pts.size() - 1;
    out.converged = res.converged && res.error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(res.value));
    for (const Mode& m : modes.modes()) {
        out.truncation_error += m.weight * (1.0 - m.amplitude) * outside_mass(M, m.width, r.lo, r.hi);
        if (m.amplitude > 0.0) {
            out.truncation_error += 0.5 * m.weight * m.amplitude *
                                    (outside_mass(M - m.frequency, m.width, r.lo, r.hi) +
                                     outside_mass(M + m.frequency, m.width, r.lo, r.hi));
        }
    }
    return out;
}

SurvivalResult direct_survival(const RestModeSet& modes, double momentum, double t, const QuadratureSpec& spec) {
    const auto a = direct_boosted_amplitude(modes, momentum, t, spec);
    const double mod = std::abs(a.amplitude);
    SurvivalResult s;
    s.probability = mod * mod;
    s.quadrature_error = a.quadrature_error * (2.0 * mod + a.quadrature_error);
    s.truncation_error = a.truncation_error * (2.0 * mod + a.truncation_error);
    s.converged = a.converged;
    return s;
}

ComparisonReport oracle_compare(const CurveSeries& closed, const CurveSeries& direct) {
    if (closed.t != direct.t) throw std::invalid_argument("oracle_compare: series are on different grids");
    if (closed.values.size() != closed.t.size() || direct.values.size() != direct.t.size())
        throw std::invalid_argument("oracle_compare: malformed series");
    if (closed.t.empty()) throw std::invalid_argument("oracle_compare: empty series");
    ComparisonReport r;
    r.t_min = closed.t.front();
    r.t_max = closed.t.back();
    r.grid_size = closed.t.size();
    r.location_abs = r.location_rel = r.t_min;
    for (std::size_t i = 0; i < closed.t.size(); ++i) {
        const double d = std::abs(closed.values[i] - direct.values[i]);
        const double ref = std::abs(direct.values[i]);
        const double rel = ref > 0.0 ? d / ref : (d > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        if (d > r.max_abs_deviation) {
            r.max_abs_deviation = d;
            r.location_abs = closed.t[i];
        }
        if (rel > r.max_rel_deviation) {
            r.max_rel_deviation = rel;
            r.location_rel = closed.t[i];
        }
    }
    r.closed = closed;
    r.direct = direct;
    return r;
}

}  // namespace decaylab
