#pragma once

#include "decaylab/curve.hpp"
#include "decaylab/kinematics.hpp"
#include "decaylab/specfun.hpp"

#include <cstddef>
#include <numbers>

namespace decaylab {

struct QuadratureSpec {
    // Mass range is M ± half_width_factor · max(Γ_N, Ω_max).
    double half_width_factor = 60.0;
    bool include_negative_mass = true;
    double abs_tol = 1e-8;
    double rel_tol = 1e-6;
    // Subintervals end where the phase √(p²+m²)t crosses multiples of phase_step.
    double phase_step = std::numbers::pi;
    std::size_t max_evaluations = 20'000'000;
};

/// Throws std::invalid_argument when the mass range does not clear every
/// Lorentzian center by 40 half-widths, or a tolerance is nonpositive.
void check_quadrature_spec(const RestModeSet& modes, const QuadratureSpec& spec);

struct AmplitudeResult {
    ComplexValue amplitude;
    double quadrature_error = 0.0;
    double truncation_error = 0.0;  // Lorentzian mass outside the integration range
    std::size_t evaluations = 0;
    std::size_t subintervals = 0;
    bool converged = true;
};

struct SurvivalResult {
    double probability = 0.0;
    double quadrature_error = 0.0;
    double truncation_error = 0.0;
    bool converged = true;
};

AmplitudeResult direct_boosted_amplitude(const RestModeSet& modes, double momentum, double t,
                                         const QuadratureSpec& spec = {});
SurvivalResult direct_survival(const RestModeSet& modes, double momentum, double t, const QuadratureSpec& spec = {});

struct ComparisonReport {
    double t_min = 0.0;
    double t_max = 0.0;
    std::size_t grid_size = 0;
    double max_abs_deviation = 0.0;
    double max_rel_deviation = 0.0;
    double location_abs = 0.0;
    double location_rel = 0.0;
    CurveSeries closed;
    CurveSeries direct;
};

/// Relative deviation is taken against the direct series.
ComparisonReport oracle_compare(const CurveSeries& closed, const CurveSeries& direct);

}  // namespace decaylab
