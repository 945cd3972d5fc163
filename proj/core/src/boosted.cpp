#include "decaylab/boosted.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace decaylab {

namespace {

constexpr double rest_branch_fraction = 1e-12;

ComplexValue decaying_phase(double mass, double width, double momentum, double t) {
    const auto [minus, plus] = lambda_pm(mass, width, momentum);
    return std::exp(-0.5 * minus * t) * std::polar(1.0, -0.5 * plus * t);
}

std::string excess_message(double t, double p) {
    std::ostringstream os;
    os << "boosted survival probability " << p << " exceeds 1 at t=" << t;
    return os.str();
}

}  // namespace

ProbabilityExcess::ProbabilityExcess(double t_, double probability_)
    : std::runtime_error(excess_message(t_, probability_)), t(t_), probability(probability_) {}

ComplexValue k_fn(double mass, double width, double momentum, double frequency, double amplitude, double t) {
    if (!(t >= 0.0)) throw std::domain_error("k_fn: t must be >= 0");
    ComplexValue k = (1.0 - amplitude) * decaying_phase(mass, width, momentum, t);
    if (amplitude != 0.0) {
        k += 0.5 * amplitude *
             (decaying_phase(mass - frequency, width, momentum, t) + decaying_phase(mass + frequency, width, momentum, t));
    }
    return k;
}

ComplexValue phi_fn(double mass, double momentum, double frequency, double amplitude, double t) {
    if (!(momentum > 0.0)) throw std::domain_error("phi_fn: p must be > 0");
    ComplexValue phi = (1.0 - amplitude) * xi_fn(mass, momentum, t);
    if (amplitude != 0.0) {
        const double r = frequency / mass;
        phi += 0.5 * amplitude *
               (xi_fn(mass - frequency, momentum, t) / ((1.0 - r) * (1.0 - r)) +
                xi_fn(mass + frequency, momentum, t) / ((1.0 + r) * (1.0 + r)));
    }
    return phi;
}

bool in_validity_domain(const RestModeSet& modes, double t, const ValidityThresholds& thresholds) {
    const bool mass_condition = (modes.mass() - modes.max_frequency()) * t >= thresholds.strong;
    if (mass_condition) return true;
    for (const Mode& m : modes.modes())
        if (!(t > 0.1 / m.width)) return false;
    return true;
}

BoostedEvaluation evaluate_boosted(const RestModeSet& modes, const BoostContext& ctx, double t,
                                   const ValidityThresholds& thresholds) {
    BoostedEvaluation ev;
    ev.t = t;
    const double M = modes.mass();
    if (ctx.momentum < rest_branch_fraction * M) {
        const double amp = amplitude_rest(modes, t);
        ev.k_sum = amp;
        ev.phi_term = 0.0;
        ev.probability = amp * amp;
        ev.in_validity_domain = true;
    } else {
        if (!(t > 0.0)) throw std::domain_error("evaluate_boosted: t must be > 0 for p > 0");
        const double p = ctx.momentum;
        const double scale = p / (std::numbers::pi * M * M);
        ComplexValue k_sum = 0.0;
        ComplexValue phi_sum = 0.0;
        for (const Mode& m : modes.modes()) {
            k_sum += m.weight * k_fn(M, m.width, p, m.frequency, m.amplitude, t);
            phi_sum += m.weight * m.width * phi_fn(M, p, m.frequency, m.amplitude, t);
        }
        ev.k_sum = k_sum;
        ev.phi_term = ComplexValue(0.0, scale) * phi_sum;
        ev.probability = std::norm(ev.k_sum + ev.phi_term);
        ev.in_validity_domain = in_validity_domain(modes, t, thresholds);
    }
    ev.above_unity = ev.probability > 1.0;
    ev.excess_error = ev.in_validity_domain && ev.probability > 1.0 + unity_tolerance;
    return ev;
}

BoostedEvaluation survival_boosted(const RestModeSet& modes, const BoostContext& ctx, double t,
                                   const ValidityThresholds& thresholds) {
    auto ev = evaluate_boosted(modes, ctx, t, thresholds);
    if (ev.excess_error) throw ProbabilityExcess(t, ev.probability);
    return ev;
}

double survival_boosted_window_approx(const RestModeSet& modes, const BoostContext& ctx, double t,
                                      std::span<const std::size_t> active) {
    if (active.empty()) throw std::domain_error("outside exponential window");
    const double a = detail::amplitude_over(modes, active, t / ctx.gamma);
    return a * a;
}

SurvivalSplit boosted_split(const RestModeSet& modes, const BoostContext& ctx, double t,
                            std::span<const std::size_t> active) {
    if (active.empty()) throw std::domain_error("outside exponential window");
    return detail::split_over(modes, active, t / ctx.gamma);
}

}  // namespace decaylab
