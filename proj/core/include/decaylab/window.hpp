#pragma once

#include "decaylab/kinematics.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace decaylab {

double w_fn(double mass, double frequency, double amplitude);

/// Dominance gate of mode j; small values mean the exponential terms dominate.
double xi_prime(const RestModeSet& modes, const BoostContext& ctx, std::size_t j);

struct CheckThresholds {
    double pass = 10.0;
    double warn = 3.0;
};

struct WindowParams {
    double zeta_min = 1e-4;
    double zeta_max = 5.4645;
    double xi_gate = 1e-3;
    CheckThresholds checks;
};

void check_window_params(const WindowParams& params);

struct Interval {
    double lo;
    double hi;
    bool contains(double t) const noexcept { return t >= lo && t <= hi; }
    double length() const noexcept { return hi - lo; }
};

std::vector<Interval> interval_union(std::vector<Interval> intervals);

struct ModeGate {
    std::size_t mode;
    double xi_prime;
    bool admitted;
};

struct TimeWindow {
    double zeta_min = 0.0;
    double zeta_max = 0.0;
    double xi_gate = 0.0;
    double gamma = 1.0;
    std::vector<ModeGate> gates;
    // Parallel to `admitted`.
    std::vector<std::size_t> admitted;
    std::vector<Interval> lab_intervals;
    std::vector<Interval> rest_intervals;
    std::vector<Interval> lab_union;
    std::vector<Interval> rest_union;
    bool merged = false;

    bool empty() const noexcept { return admitted.empty(); }
    std::vector<std::size_t> active_modes(double t) const;
    std::vector<ModeGate> excluded() const;
    /// [2ζ_min γ/Γ_last, 2ζ_max γ/Γ_first]; only meaningful when merged.
    std::optional<Interval> merged_interval(const RestModeSet& modes) const;
    bool contains(double t) const;
};

TimeWindow exponential_windows(const RestModeSet& modes, const BoostContext& ctx, const WindowParams& params = {});

enum class CheckStatus { pass, warn, fail };
const char* to_string(CheckStatus status);

struct ConstraintCheck {
    std::string name;
    std::string description;
    double value = 0.0;
    double pass_threshold = 0.0;
    double warn_threshold = 0.0;
    CheckStatus status = CheckStatus::fail;
    bool required = true;
};

struct ConstraintReport {
    std::vector<ConstraintCheck> checks;
    bool all_pass() const;
    const ConstraintCheck* find(const std::string& name) const;
};

ConstraintReport constraint_report(const RestModeSet& modes, const BoostContext& ctx, const TimeWindow& window,
                                   const WindowParams& params = {});

struct PeriodReport {
    double omega_max = 0.0;
    bool commensurate = false;
    std::vector<long> k;
    std::optional<double> rest_period;
    std::optional<double> lab_period;
};

PeriodReport periods_for(std::span<const double> frequencies, double gamma);
PeriodReport periods(const RestModeSet& modes, const BoostContext& ctx, std::span<const std::size_t> active);

}  // namespace decaylab
