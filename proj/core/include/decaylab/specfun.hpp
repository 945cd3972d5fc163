#pragma once

#include <complex>

namespace decaylab {

using ComplexValue = std::complex<double>;

double bessel_j1(double x);
double bessel_y1(double x);
double struve_h1(double x);

/// H1(x) - Y1(x), evaluated without forming the two large-x terms separately.
double struve_h1_minus_y1(double x);

struct LambdaPair {
    double minus;
    double plus;
};

LambdaPair lambda_pm(double mass, double width, double momentum);

/// Λ- + iΛ+
ComplexValue upsilon(double mass, double width, double momentum);

ComplexValue xi_fn(double mass, double momentum, double t);

namespace detail {

// (π/2)(H1(x) - Y1(x)) - 1, i.e. ∫₀^∞ e^{-u}(√(1+u²/x²) - 1) du for x > 0.
double struve_excess(double x);

double struve_h1_series(double x);
double struve_excess_quadrature(double x);
double struve_excess_asymptotic(double x);

inline constexpr double struve_series_limit = 8.0;
inline constexpr double struve_asymptotic_limit = 40.0;

}  // namespace detail

}  // namespace decaylab
