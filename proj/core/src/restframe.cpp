#include "decaylab/restframe.hpp"

#include "decaylab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace decaylab {

namespace {

void require_time(double t, const char* who) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::domain_error(std::string(who) + ": t must be finite and >= 0");
}

std::vector<std::size_t> all_indices(const RestModeSet& modes) {
    std::vector<std::size_t> idx(modes.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

double lorentzian(double x, double width) {
    const double h = 0.5 * width;
    return h / (h * h + x * x);
}

}  // namespace

namespace detail {

double amplitude_over(const RestModeSet& modes, std::span<const std::size_t> active, double t) {
    double sum = 0.0;
    for (std::size_t j : active) {
        const Mode& m = modes[j];
        sum += m.weight * std::exp(-0.5 * m.width * t) * (1.0 - m.amplitude + m.amplitude * std::cos(m.frequency * t));
    }
    return sum;
}

SurvivalSplit split_over(const RestModeSet& modes, std::span<const std::size_t> active, double t) {
    double expo = 0.0;
    double osc = 0.0;
    for (std::size_t j : active) {
        const Mode& mj = modes[j];
        for (std::size_t l : active) {
            const Mode& ml = modes[l];
            const bool same = (j == l) || (mj.frequency == ml.frequency);
            const double env = mj.weight * ml.weight * std::exp(-0.5 * (mj.width + ml.width) * t);
            expo += env * ((1.0 - mj.amplitude) * (1.0 - ml.amplitude) + (same ? 0.5 * mj.amplitude * ml.amplitude : 0.0));
            double beats = std::cos((mj.frequency + ml.frequency) * t);
            if (!same) beats += std::cos((mj.frequency - ml.frequency) * t);
            osc += env * mj.amplitude *
                   (2.0 * (1.0 - ml.amplitude) * std::cos(mj.frequency * t) + 0.5 * ml.amplitude * beats);
        }
    }
    return {expo, osc};
}

}  // namespace detail

double amplitude_rest(const RestModeSet& modes, double t) {
    require_time(t, "amplitude_rest");
    const auto idx = all_indices(modes);
    return detail::amplitude_over(modes, idx, t);
}

double survival_rest(const RestModeSet& modes, double t) {
    const double a = amplitude_rest(modes, t);
    return a * a;
}

double log_survival_rest(const RestModeSet& modes, double t) {
    require_time(t, "log_survival_rest");
    const double g1 = modes.min_width();
    double s = 0.0;
    for (const Mode& m : modes.modes())
        s += m.weight * std::exp(-0.5 * (m.width - g1) * t) * (1.0 - m.amplitude + m.amplitude * std::cos(m.frequency * t));
    return -g1 * t + 2.0 * std::log(s);
}

SurvivalSplit survival_rest_split(const RestModeSet& modes, double t) {
    require_time(t, "survival_rest_split");
    const auto idx = all_indices(modes);
    return detail::split_over(modes, idx, t);
}

std::vector<DecayRateCoefficients> decay_rate_coefficients(const RestModeSet& modes) {
    std::vector<DecayRateCoefficients> out;
    out.reserve(modes.size());
    for (const Mode& m : modes.modes()) {
        DecayRateCoefficients c;
        c.lambda1 = m.width * (1.0 - m.amplitude);
        c.lambda2 = m.amplitude * std::hypot(m.width, 2.0 * m.frequency);
        c.beta = c.lambda2 == 0.0 ? 0.0 : std::atan2(2.0 * m.frequency, m.width);
        out.push_back(c);
    }
    return out;
}

double decay_rate_rest(const RestModeSet& modes, double t) {
    require_time(t, "decay_rate_rest");
    const auto coeffs = decay_rate_coefficients(modes);
    double sum = 0.0;
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const Mode& m = modes[j];
        sum += m.weight * std::exp(-0.5 * m.width * t) *
               (coeffs[j].lambda1 + coeffs[j].lambda2 * std::cos(m.frequency * t - coeffs[j].beta));
    }
    return -amplitude_rest(modes, t) * sum;
}

double mdd_analytic(const RestModeSet& modes, double mass) {
    const double x = mass - modes.mass();
    double sum = 0.0;
    for (const Mode& m : modes.modes()) {
        sum += m.weight * ((1.0 - m.amplitude) * lorentzian(x, m.width) +
                           0.5 * m.amplitude * (lorentzian(x - m.frequency, m.width) + lorentzian(x + m.frequency, m.width)));
    }
    return std::abs(sum) / std::numbers::pi;
}

double default_mdd_cutoff(const RestModeSet& modes) {
    return 60.0 / modes.min_width();
}

double mdd_numeric(const RestModeSet& modes, double mass, double t_cut) {
    const double min_cut = 40.0 / modes.min_width();
    if (!(t_cut >= min_cut * (1.0 - 1e-12)))
        throw std::domain_error("mdd_numeric: t_cut below 40/Gamma_1 leaves a non-negligible tail");
    const double x = mass - modes.mass();
    const auto idx = all_indices(modes);
    auto f = [&](double t) { return detail::amplitude_over(modes, idx, t) * std::cos(x * t); };

    const double rate = std::abs(x) + modes.max_frequency();
    std::vector<double> pts;
    if (rate > 0.0) {
        const double step = std::numbers::pi / rate;
        const auto n = static_cast<std::size_t>(std::min(t_cut / step, 1e6));
        pts.reserve(n + 2);
        for (std::size_t k = 1; k <= n; ++k) pts.push_back(static_cast<double>(k) * step);
    }
    pts = quad::clip_breakpoints(std::move(pts), 0.0, t_cut);
    const auto res = quad::integrate(f, std::span<const double>(pts), 1e-11);
    if (!res.converged) throw std::runtime_error("mdd_numeric: quadrature did not converge");
    return std::abs(res.value) / std::numbers::pi;
}

double mdd_numeric(const RestModeSet& modes, double mass) {
    return mdd_numeric(modes, mass, default_mdd_cutoff(modes));
}

CurveSeries sample_rest(const RestModeSet& modes, std::span<const double> t, CurveKind kind) {
    CurveSeries s;
    s.frame = Frame::rest;
    s.kind = kind;
    s.t.assign(t.begin(), t.end());
    s.values.reserve(t.size());
    for (double ti : t) {
        switch (kind) {
            case CurveKind::amplitude: s.values.push_back(amplitude_rest(modes, ti)); break;
            case CurveKind::probability: s.values.push_back(survival_rest(modes, ti)); break;
            case CurveKind::rate: s.values.push_back(decay_rate_rest(modes, ti)); break;
            case CurveKind::timemap: s.values.push_back(ti); break;
        }
    }
    s.provenance = std::string("rest-frame ") + to_string(kind);
    return s;
}

}  // namespace decaylab
