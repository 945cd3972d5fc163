#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace decaylab {

// One damped-oscillating rest-frame mode:
//   w e^{-Γt/2} (1 - a + a cos Ωt)
struct Mode {
    double weight = 1.0;
    double width = 1.0;
    double frequency = 0.0;
    double amplitude = 0.0;
};

// Unvalidated input record.
struct ModeCandidate {
    double mass = 0.0;
    std::vector<Mode> modes;
};

struct ValidationOptions {
    double narrow_width_threshold = 5e-2;
    double weight_sum_tolerance = 1e-12;
};

struct Violation {
    std::string constraint;
    std::optional<std::size_t> mode;
    double value = 0.0;
    double limit = 0.0;
    std::string message;
};

struct ModeValidation;

/// Checks every invariant and reports all violations, not just the first.
ModeValidation validate_modes(const ModeCandidate& candidate, const ValidationOptions& options = {});

class RestModeSet {
public:
    double mass() const noexcept { return mass_; }
    std::size_t size() const noexcept { return modes_.size(); }
    std::span<const Mode> modes() const noexcept { return modes_; }
    const Mode& operator[](std::size_t j) const { return modes_.at(j); }

    double min_width() const noexcept { return modes_.front().width; }
    double max_width() const noexcept { return modes_.back().width; }
    double max_frequency() const noexcept;
    double max_amplitude() const noexcept;

private:
    RestModeSet(double mass, std::vector<Mode> modes) : mass_(mass), modes_(std::move(modes)) {}
    friend ModeValidation validate_modes(const ModeCandidate&, const ValidationOptions&);

    double mass_;
    std::vector<Mode> modes_;
};

struct ModeValidation {
    std::optional<RestModeSet> modes;
    std::vector<Violation> violations;
    bool ok() const noexcept { return modes.has_value(); }
};

class InvalidModel : public std::invalid_argument {
public:
    explicit InvalidModel(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// validate_modes, throwing InvalidModel on failure.
RestModeSet make_modes(const ModeCandidate& candidate, const ValidationOptions& options = {});

double lorentz_factor(double mass, double momentum);

struct ShiftedMode {
    double mass_minus = 0.0;
    double mass_plus = 0.0;
    double gamma_minus = 1.0;
    double gamma_plus = 1.0;
    double width_minus = 0.0;
    double width_plus = 0.0;
};

struct BoostContext {
    double momentum = 0.0;
    double gamma = 1.0;
    std::vector<ShiftedMode> shifted;
};

BoostContext shifted_kinematics(const RestModeSet& modes, double momentum);

struct ConsolidatedTerm {
    double weight;
    double width;
    double mass;
};

struct ConsolidatedModes {
    std::vector<ConsolidatedTerm> terms;
    std::size_t size() const noexcept { return terms.size(); }
};

// Lab-frame exponential terms sorted by width; equal (width, mass) pairs merged.
ConsolidatedModes consolidate_modes(const RestModeSet& modes, const BoostContext& ctx);

}  // namespace decaylab
