#include "decaylab/specfun.hpp"

#include "decaylab/quadrature.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace decaylab {

namespace {

constexpr double pi = std::numbers::pi;

void require_argument(double x, bool allow_zero, const char* who) {
    if (!std::isfinite(x) || x < 0.0 || (!allow_zero && x == 0.0))
        throw std::domain_error(std::string(who) + ": argument out of domain");
}

}  // namespace

double bessel_j1(double x) {
    require_argument(x, true, "bessel_j1");
    return boost::math::cyl_bessel_j(1, x);
}

double bessel_y1(double x) {
    require_argument(x, false, "bessel_y1");
    return boost::math::cyl_neumann(1, x);
}

namespace detail {

// Σ (-1)^k (x/2)^{2k+2} / (Γ(k+3/2) Γ(k+5/2))
double struve_h1_series(double x) {
    const double z = 0.5 * x;
    const double z2 = z * z;
    // Γ(3/2)Γ(5/2) = 3π/8
    double term = z2 / (3.0 * pi / 8.0);
    double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= -z2 / ((k + 0.5) * (k + 1.5));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

double struve_excess_quadrature(double x) {
    static const quad::GaussLegendreRule& rule = quad::gauss_legendre(20);
    constexpr double upper = 48.0;
    constexpr int panels = 12;
    constexpr double h = upper / panels;
    const double inv_x2 = 1.0 / (x * x);
    double total = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double c = (k + 0.5) * h;
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double u = c + 0.5 * h * rule.nodes[i];
            const double q = u * u * inv_x2;
            s += rule.weights[i] * std::exp(-u) * q / (1.0 + std::sqrt(1.0 + q));
        }
        total += 0.5 * h * s;
    }
    return total;
}

// Σ_{k≥1} binom(1/2,k)(2k)! / x^{2k}, truncated at the smallest term.
double struve_excess_asymptotic(double x) {
    const double inv_x2 = 1.0 / (x * x);
    double term = inv_x2;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        const double next = term * (1.0 - 2.0 * k) * (2.0 * k + 1.0) * inv_x2;
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

double struve_excess(double x) {
    if (x <= struve_series_limit) return 0.5 * pi * (struve_h1_series(x) - boost::math::cyl_neumann(1, x)) - 1.0;
    if (x < struve_asymptotic_limit) return struve_excess_quadrature(x);
    return struve_excess_asymptotic(x);
}

}  // namespace detail

double struve_h1(double x) {
    require_argument(x, true, "struve_h1");
    if (x <= detail::struve_series_limit) return detail::struve_h1_series(x);
    return boost::math::cyl_neumann(1, x) + (2.0 / pi) * (1.0 + detail::struve_excess(x));
}

double struve_h1_minus_y1(double x) {
    require_argument(x, false, "struve_h1_minus_y1");
    if (x <= detail::struve_series_limit) return detail::struve_h1_series(x) - boost::math::cyl_neumann(1, x);
    return (2.0 / pi) * (1.0 + detail::struve_excess(x));
}

LambdaPair lambda_pm(double mass, double width, double momentum) {
    if (!(mass > 0.0) || !(width > 0.0) || !(momentum >= 0.0))
        throw std::domain_error("lambda_pm: requires M > 0, Gamma > 0, p >= 0");
    const double X = mass * mass - 0.25 * width * width + momentum * momentum;
    const double c = mass * width;
    const double r = std::hypot(X, c);
    // Λ-Λ+ = 2MΓ; take the well-conditioned root first.
    if (X >= 0.0) {
        const double plus = std::sqrt(2.0 * (r + X));
        return {2.0 * c / plus, plus};
    }
    const double minus = std::sqrt(2.0 * (r - X));
    return {minus, 2.0 * c / minus};
}

ComplexValue upsilon(double mass, double width, double momentum) {
    const auto [minus, plus] = lambda_pm(mass, width, momentum);
    return {minus, plus};
}

ComplexValue xi_fn(double mass, double momentum, double t) {
    if (!(mass > 0.0)) throw std::domain_error("xi_fn: mass must be positive");
    if (!(momentum > 0.0) || !(t > 0.0)) throw std::domain_error("xi_fn: requires p > 0 and t > 0");
    const double x = momentum * t;
    const double q = (momentum / mass) * (momentum / mass);
    const double c = (1.0 - q) / ((1.0 + q) * (1.0 + q));
    // Ξ = (π/2)(Y1 - iJ1) + (1 - c)·[(π/2)(H1 - Y1) - 1]
    const double j1 = boost::math::cyl_bessel_j(1, x);
    const double y1 = boost::math::cyl_neumann(1, x);
    const double excess = detail::struve_excess(x);
    return {0.5 * pi * y1 + (1.0 - c) * excess, -0.5 * pi * j1};
}

}  // namespace decaylab
