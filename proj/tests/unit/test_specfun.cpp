#include "mp_oracle.hpp"

#include <decaylab/kinematics.hpp>
#include <decaylab/specfun.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace decaylab;

namespace {

constexpr double two_over_pi = 2.0 / std::numbers::pi;

void expect_close(double got, double ref, const char* what, double x) {
    const double err = std::abs(got - ref);
    EXPECT_LE(err, std::max(1e-10 * std::abs(ref), 1e-12)) << what << " at x=" << x << " got " << got << " ref " << ref;
}

}  // namespace

TEST(SpecialFunctions, ValuesAtZero) {
    EXPECT_EQ(bessel_j1(0.0), 0.0);
    EXPECT_EQ(struve_h1(0.0), 0.0);
    EXPECT_THROW(bessel_y1(0.0), std::domain_error);
    EXPECT_THROW(bessel_j1(-1.0), std::domain_error);
    EXPECT_THROW(struve_h1(-1.0), std::domain_error);
    EXPECT_THROW(bessel_y1(NAN), std::domain_error);
}

TEST(SpecialFunctions, MatchArbitraryPrecisionReference) {
    for (int i = 0; i < 240; ++i) {
        const double x = 1e-8 * std::pow(1e12, i / 239.0);
        const auto ref = oracle::reference(x);
        expect_close(bessel_j1(x), ref.j1, "J1", x);
        expect_close(bessel_y1(x), ref.y1, "Y1", x);
        expect_close(struve_h1(x), ref.h1, "H1", x);
    }
}

TEST(SpecialFunctions, StruveNearBranchPoints) {
    for (double x : {7.9, 8.0, 8.0000001, 8.1, 12.0, 18.0, 25.0, 39.9, 40.0, 40.1, 55.0}) {
        const auto ref = oracle::reference(x);
        expect_close(struve_h1(x), ref.h1, "H1", x);
        const double hmy = static_cast<double>(oracle::h1_series(oracle::mp100(x)) - oracle::y1_series(oracle::mp100(x)));
        EXPECT_NEAR(struve_h1_minus_y1(x), hmy, 5e-14 * hmy) << x;
    }
}

TEST(SpecialFunctions, BranchSeamsAreContinuous) {
    const double a = detail::struve_series_limit;
    const double left = detail::struve_h1_series(a);
    const double right = bessel_y1(a) + two_over_pi * (1.0 + detail::struve_excess_quadrature(a));
    EXPECT_LE(std::abs(left - right), 1e-10 * std::abs(left));

    const double b = detail::struve_asymptotic_limit;
    const double q = bessel_y1(b) + two_over_pi * (1.0 + detail::struve_excess_quadrature(b));
    const double s = bessel_y1(b) + two_over_pi * (1.0 + detail::struve_excess_asymptotic(b));
    EXPECT_LE(std::abs(q - s), 1e-10 * std::abs(q));
    EXPECT_LE(std::abs(detail::struve_excess_quadrature(b) - detail::struve_excess_asymptotic(b)),
              1e-12 * detail::struve_excess_asymptotic(b));
}

TEST(SpecialFunctions, StruveMinusNeumannLimit) {
    const double d = struve_h1(500.0) - bessel_y1(500.0);
    EXPECT_NEAR(d, two_over_pi, 0.01 * two_over_pi);
    double prev = struve_h1_minus_y1(50.0) - two_over_pi;
    EXPECT_GT(prev, 0.0);
    for (double x = 55.0; x < 1e4; x *= 1.1) {
        const double e = struve_h1_minus_y1(x) - two_over_pi;
        EXPECT_GT(e, 0.0);
        EXPECT_LT(e, prev);
        prev = e;
    }
}

TEST(SpecialFunctions, FirstZeroOfJ1) {
    using oracle::mp50;
    mp50 lo = 3.5, hi = 4.0;
    for (int i = 0; i < 60; ++i) {
        const mp50 mid = (lo + hi) / 2;
        if (oracle::j1_series(mid) > 0)
            lo = mid;
        else
            hi = mid;
    }
    const double zero = static_cast<double>((lo + hi) / 2);
    EXPECT_NEAR(zero, 3.8317059702, 1e-10);
    EXPECT_LT(std::abs(bessel_j1(zero)), 1e-15);
    EXPECT_GT(bessel_j1(zero - 1e-9), 0.0);
    EXPECT_LT(bessel_j1(zero + 1e-9), 0.0);
}

TEST(LambdaPm, RestFrameValues) {
    for (double g : {0.01, 1.0, 37.0}) {
        const auto l = lambda_pm(100.0, g, 0.0);
        EXPECT_DOUBLE_EQ(l.minus, g);
        EXPECT_DOUBLE_EQ(l.plus, 200.0);
    }
    EXPECT_THROW(lambda_pm(0.0, 1.0, 1.0), std::domain_error);
    EXPECT_THROW(lambda_pm(1.0, 0.0, 1.0), std::domain_error);
}

TEST(LambdaPm, ProductIdentity) {
    const auto l = lambda_pm(100.0, 1.0, 210.0);
    EXPECT_NEAR(l.minus * l.plus, 200.0, 200.0 * 1e-14);
}

TEST(LambdaPm, RandomizedIdentities) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double M = std::pow(10.0, -1.0 + 5.0 * u(rng));
        const double G = M * std::pow(10.0, -6.0 + 5.0 * u(rng));
        const double p = M * std::pow(10.0, -4.0 + 6.0 * u(rng));
        const auto [lm, lp] = lambda_pm(M, G, p);
        EXPECT_GE(lm, 0.0);
        EXPECT_GE(lp, 0.0);
        EXPECT_NEAR(lm * lp, 2 * M * G, 1e-10 * 2 * M * G);
        const double X = M * M - G * G / 4 + p * p;
        EXPECT_NEAR(lp * lp - lm * lm, 4 * X, 1e-10 * 4 * X);
    }
}

TEST(Upsilon, RestFrame) {
    const auto u = upsilon(50.0, 0.5, 0.0);
    EXPECT_DOUBLE_EQ(u.real(), 0.5);
    EXPECT_DOUBLE_EQ(u.imag(), 100.0);
}

TEST(Upsilon, QuadraticResidual) {
    const double M = 80.0, G = 1.0, p = 200.0;
    const auto u = upsilon(M, G, p);
    const ComplexValue r = (u / 2.0) * (u / 2.0) + p * p + ComplexValue(M, -G / 2) * ComplexValue(M, -G / 2);
    EXPECT_LE(std::abs(r) / (p * p + M * M), 1e-10);
}

TEST(Upsilon, NarrowWidthRealPart) {
    const double M = 100.0, G = 0.1, p = 210.0;
    const double g = lorentz_factor(M, p);
    EXPECT_NEAR(upsilon(M, G, p).real() / 2, G / (2 * g), 1e-4 * G / (2 * g));
}

TEST(XiFn, DomainChecks) {
    EXPECT_THROW(xi_fn(100.0, 0.0, 1.0), std::domain_error);
    EXPECT_THROW(xi_fn(100.0, 1.0, 0.0), std::domain_error);
}

TEST(XiFn, EqualMassAndMomentum) {
    for (double t : {0.05, 0.7, 3.0}) {
        const double x = 100.0 * t;
        const auto xi = xi_fn(100.0, 100.0, t);
        const double re = std::numbers::pi / 2 * struve_h1(x) - 1.0;
        const double im = -std::numbers::pi / 2 * bessel_j1(x);
        EXPECT_NEAR(xi.real(), re, 1e-12 * (1 + std::abs(re)));
        EXPECT_NEAR(xi.imag(), im, 1e-15);
    }
}

TEST(XiFn, LargeArgumentLaw) {
    const double M = 80.0, G = 1.0, p = 200.0;
    for (double t : {1.0, 2.5, 6.0, 11.0}) {
        const double x = p * t;
        const ComplexValue lhs = ComplexValue(0.0, p * G / (std::numbers::pi * M * M)) * xi_fn(M, p, t);
        const ComplexValue rhs = std::polar(1.0, x - 0.75 * std::numbers::pi) / std::sqrt(2 * std::numbers::pi * x) * (p * G / (M * M));
        EXPECT_LE(std::abs(lhs - rhs), 0.01 * std::abs(rhs)) << "pt=" << x;
    }
}

TEST(XiFn, SpotValueAgainstHighPrecision) {
    const auto ref = oracle::xi_reference(100.0, 210.0, 1.0);
    const auto got = xi_fn(100.0, 210.0, 1.0);
    EXPECT_LE(std::abs(got - ref), 1e-10 * std::abs(ref));
    for (double t : {0.01, 0.2, 0.05}) {
        const auto r = oracle::xi_reference(80.0, 200.0, t);
        EXPECT_LE(std::abs(xi_fn(80.0, 200.0, t) - r), 1e-10 * std::abs(r)) << t;
    }
}
