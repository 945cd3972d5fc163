#include "decaylab/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace decaylab {

namespace {

std::string describe(const std::vector<Violation>& violations) {
    std::ostringstream os;
    os << "invalid mode model:";
    for (const auto& v : violations) {
        os << ' ' << v.constraint;
        if (v.mode) os << "[mode " << *v.mode << ']';
        os << ';';
    }
    return os.str();
}

bool close_relative(double x, double y, double tol) {
    return std::abs(x - y) <= tol * std::max(std::abs(x), std::abs(y));
}

}  // namespace

double RestModeSet::max_frequency() const noexcept {
    double m = 0.0;
    for (const auto& mode : modes_) m = std::max(m, mode.frequency);
    return m;
}

double RestModeSet::max_amplitude() const noexcept {
    double m = 0.0;
    for (const auto& mode : modes_) m = std::max(m, mode.amplitude);
    return m;
}

InvalidModel::InvalidModel(std::vector<Violation> violations)
    : std::invalid_argument(describe(violations)), violations_(std::move(violations)) {}

ModeValidation validate_modes(const ModeCandidate& candidate, const ValidationOptions& options) {
    std::vector<Violation> out;
    auto add = [&](std::string name, std::optional<std::size_t> j, double value, double limit,
                   std::string message) {
        out.push_back({std::move(name), j, value, limit, std::move(message)});
    };

    const double M = candidate.mass;
    const bool mass_ok = std::isfinite(M) && M > 0.0;
    if (!mass_ok) add("mass_positive", std::nullopt, M, 0.0, "mass must be finite and positive");
    if (candidate.modes.empty()) add("mode_count", std::nullopt, 0.0, 1.0, "at least one mode required");

    double weight_sum = 0.0;
    for (std::size_t j = 0; j < candidate.modes.size(); ++j) {
        const Mode& m = candidate.modes[j];
        if (!std::isfinite(m.weight) || !std::isfinite(m.width) || !std::isfinite(m.frequency) ||
            !std::isfinite(m.amplitude)) {
            add("finite", j, 0.0, 0.0, "mode parameters must be finite");
            continue;
        }
        weight_sum += m.weight;
        if (m.weight <= 0.0) add("weight_positive", j, m.weight, 0.0, "w_j > 0 required");
        if (m.amplitude < 0.0 || m.amplitude >= 0.5)
            add("amplitude_range", j, m.amplitude, 0.5, "0 <= a_j < 1/2 required");
        if (m.frequency < 0.0 || (mass_ok && m.frequency >= M))
            add("frequency_range", j, m.frequency, M, "0 <= Omega_j < M required");
        if (m.width <= 0.0) add("width_positive", j, m.width, 0.0, "Gamma_j > 0 required");
        if (j > 0 && std::isfinite(candidate.modes[j - 1].width) && m.width <= candidate.modes[j - 1].width)
            add("width_order", j, m.width, candidate.modes[j - 1].width,
                "widths must be strictly increasing");
        if (mass_ok && m.width > 0.0 && m.frequency >= 0.0 && m.frequency < M) {
            const double ratio = m.width / (M - m.frequency);
            if (ratio > options.narrow_width_threshold)
                add("narrow_width", j, ratio, options.narrow_width_threshold,
                    "Gamma_j/(M - Omega_j) exceeds the narrow-width threshold");
        }
        if (m.amplitude > 0.0 && m.amplitude < 0.5 && m.frequency >= 0.0) {
            const double bound = 2.0 * m.amplitude * m.frequency / std::sqrt(1.0 - 2.0 * m.amplitude);
            if (!(m.width > bound))
                add("monotonic_decay", j, m.width, bound,
                    "Gamma_j > 2 a_j Omega_j / sqrt(1 - 2 a_j) required");
        }
    }
    if (!candidate.modes.empty() && std::abs(weight_sum - 1.0) > options.weight_sum_tolerance)
        add("weight_sum", std::nullopt, weight_sum, 1.0, "weights must sum to 1");

    ModeValidation result;
    result.violations = std::move(out);
    if (result.violations.empty()) result.modes = RestModeSet(M, candidate.modes);
    return result;
}

RestModeSet make_modes(const ModeCandidate& candidate, const ValidationOptions& options) {
    auto v = validate_modes(candidate, options);
    if (!v.ok()) throw InvalidModel(std::move(v.violations));
    return std::move(*v.modes);
}

double lorentz_factor(double mass, double momentum) {
    if (!(mass > 0.0) || !std::isfinite(mass)) throw std::domain_error("lorentz_factor: mass must be positive");
    if (!(momentum >= 0.0) || !std::isfinite(momentum))
        throw std::domain_error("lorentz_factor: momentum must be nonnegative");
    return std::hypot(1.0, momentum / mass);
}

BoostContext shifted_kinematics(const RestModeSet& modes, double momentum) {
    BoostContext ctx;
    ctx.momentum = momentum;
    ctx.gamma = lorentz_factor(modes.mass(), momentum);
    ctx.shifted.reserve(modes.size());
    for (const Mode& m : modes.modes()) {
        ShiftedMode s;
        s.mass_minus = modes.mass() - m.frequency;
        s.mass_plus = modes.mass() + m.frequency;
        s.gamma_minus = lorentz_factor(s.mass_minus, momentum);
        s.gamma_plus = lorentz_factor(s.mass_plus, momentum);
        s.width_minus = ctx.gamma / s.gamma_minus * m.width;
        s.width_plus = ctx.gamma / s.gamma_plus * m.width;
        ctx.shifted.push_back(s);
    }
    return ctx;
}

ConsolidatedModes consolidate_modes(const RestModeSet& modes, const BoostContext& ctx) {
    std::vector<ConsolidatedTerm> raw;
    raw.reserve(3 * modes.size());
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const Mode& m = modes[j];
        const ShiftedMode& s = ctx.shifted.at(j);
        const double side = m.weight * m.amplitude / 2.0;
        raw.push_back({side, s.width_minus, s.mass_minus * s.gamma_minus / ctx.gamma});
        raw.push_back({m.weight * (1.0 - m.amplitude), m.width, modes.mass()});
        raw.push_back({side, s.width_plus, s.mass_plus * s.gamma_plus / ctx.gamma});
    }
    std::erase_if(raw, [](const ConsolidatedTerm& c) { return c.weight == 0.0; });
    std::stable_sort(raw.begin(), raw.end(), [](const ConsolidatedTerm& x, const ConsolidatedTerm& y) {
        return x.width < y.width || (x.width == y.width && x.mass < y.mass);
    });

    constexpr double tol = 1e-12;
    ConsolidatedModes out;
    for (const auto& term : raw) {
        auto hit = std::find_if(out.terms.begin(), out.terms.end(), [&](const ConsolidatedTerm& c) {
            return close_relative(c.width, term.width, tol) && close_relative(c.mass, term.mass, tol);
        });
        if (hit != out.terms.end())
            hit->weight += term.weight;
        else
            out.terms.push_back(term);
    }
    return out;
}

}  // namespace decaylab
