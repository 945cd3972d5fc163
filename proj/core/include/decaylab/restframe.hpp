#pragma once

#include "decaylab/curve.hpp"
#include "decaylab/kinematics.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace decaylab {

struct SurvivalSplit {
    double exponential;
    double oscillating;
    double total() const noexcept { return exponential + oscillating; }
};

struct DecayRateCoefficients {
    double lambda1;
    double lambda2;
    double beta;
};

double amplitude_rest(const RestModeSet& modes, double t);
double survival_rest(const RestModeSet& modes, double t);

/// ln P0(t), finite far beyond the point where P0 underflows.
double log_survival_rest(const RestModeSet& modes, double t);

SurvivalSplit survival_rest_split(const RestModeSet& modes, double t);

std::vector<DecayRateCoefficients> decay_rate_coefficients(const RestModeSet& modes);
double decay_rate_rest(const RestModeSet& modes, double t);

double mdd_analytic(const RestModeSet& modes, double mass);

/// Cosine transform of √P0 on [0, t_cut] by adaptive quadrature.
double mdd_numeric(const RestModeSet& modes, double mass, double t_cut);
double mdd_numeric(const RestModeSet& modes, double mass);

double default_mdd_cutoff(const RestModeSet& modes);

CurveSeries sample_rest(const RestModeSet& modes, std::span<const double> t, CurveKind kind);

namespace detail {

// Same sums restricted to a subset of mode indices; weights are not renormalized.
double amplitude_over(const RestModeSet& modes, std::span<const std::size_t> active, double t);
SurvivalSplit split_over(const RestModeSet& modes, std::span<const std::size_t> active, double t);

}  // namespace detail

}  // namespace decaylab
