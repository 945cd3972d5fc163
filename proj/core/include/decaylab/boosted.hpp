#pragma once

#include "decaylab/kinematics.hpp"
#include "decaylab/restframe.hpp"
#include "decaylab/specfun.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>

namespace decaylab {

ComplexValue k_fn(double mass, double width, double momentum, double frequency, double amplitude, double t);
ComplexValue phi_fn(double mass, double momentum, double frequency, double amplitude, double t);

struct ValidityThresholds {
    double strong = 10.0;
    double warn = 3.0;
};

inline constexpr double unity_tolerance = 1e-6;

struct BoostedEvaluation {
    double t = 0.0;
    ComplexValue k_sum;
    ComplexValue phi_term;
    double probability = 0.0;
    bool in_validity_domain = true;
    bool above_unity = false;     // P > 1
    bool excess_error = false;    // P > 1 + unity_tolerance inside the validity domain
};

class ProbabilityExcess : public std::runtime_error {
public:
    ProbabilityExcess(double t, double probability);
    double t;
    double probability;
};

/// For every mode: t > 1/(10 Γ_j) or (M - Ω_max) t >= thresholds.strong.
bool in_validity_domain(const RestModeSet& modes, double t, const ValidityThresholds& thresholds = {});

/// Closed-form lab-frame evaluation. Never throws for t > 0; problems are flagged.
BoostedEvaluation evaluate_boosted(const RestModeSet& modes, const BoostContext& ctx, double t,
                                   const ValidityThresholds& thresholds = {});

/// As evaluate_boosted, but throws ProbabilityExcess when excess_error is set.
BoostedEvaluation survival_boosted(const RestModeSet& modes, const BoostContext& ctx, double t,
                                   const ValidityThresholds& thresholds = {});

double survival_boosted_window_approx(const RestModeSet& modes, const BoostContext& ctx, double t,
                                      std::span<const std::size_t> active);

SurvivalSplit boosted_split(const RestModeSet& modes, const BoostContext& ctx, double t,
                            std::span<const std::size_t> active);

}  // namespace decaylab
