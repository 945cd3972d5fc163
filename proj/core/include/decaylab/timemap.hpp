#pragma once

#include "decaylab/boosted.hpp"
#include "decaylab/curve.hpp"
#include "decaylab/kinematics.hpp"
#include "decaylab/window.hpp"

#include <cstddef>
#include <stdexcept>

namespace decaylab {

/// Time t with P0(t) = r, for 0 < r <= 1.
double invert_survival_rest(const RestModeSet& modes, double r);

class ProbabilityOutOfRange : public std::domain_error {
public:
    ProbabilityOutOfRange(double t, double probability);
    double t;
    double probability;
};

/// φ_p(t) = P0^{-1}(P_p(t)).
double phi_p(const RestModeSet& modes, const BoostContext& ctx, double t);

struct LinearityFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;          // about the fitted line
    double max_scaling_residual = 0.0;  // |φ_p(t) - t/γ|
    Interval fit_interval{0.0, 0.0};
    double expected_slope = 1.0;
    double relative_slope_error = 0.0;
    std::size_t points = 0;
};

/// Least-squares line through the series points that fall inside the window.
LinearityFit linearity_fit(const CurveSeries& series, const TimeWindow& window, const BoostContext& ctx);

}  // namespace decaylab
