#include "decaylab/timemap.hpp"

#include "decaylab/restframe.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <sstream>

namespace decaylab {

namespace {

std::string range_message(double t, double p) {
    std::ostringstream os;
    os.precision(17);
    os << "boosted probability " << p << " at t=" << t << " lies outside (0, 1]";
    return os.str();
}

}  // namespace

ProbabilityOutOfRange::ProbabilityOutOfRange(double t_, double probability_)
    : std::domain_error(range_message(t_, probability_)), t(t_), probability(probability_) {}

double invert_survival_rest(const RestModeSet& modes, double r) {
    if (!(r > 0.0) || !(r <= 1.0)) throw std::domain_error("invert_survival_rest: r must lie in (0, 1]");
    if (r == 1.0) return 0.0;

    const bool use_log = r < 1e-2;
    const double log_r = std::log(r);
    auto f = [&](double t) {
        return use_log ? log_survival_rest(modes, t) - log_r : survival_rest(modes, t) - r;
    };

    const double limit = 1e4 / modes.min_width();
    double lo = 0.0;
    double hi = 1.0 / modes.max_width();
    double f_hi = f(hi);
    while (f_hi > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > limit) throw std::domain_error("invert_survival_rest: r lies below the representable tail");
        f_hi = f(hi);
    }
    double f_lo = f(lo);
    while (hi - lo > 1e-3 * hi) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm > 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
            f_hi = fm;
        }
    }
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;

    std::uintmax_t iterations = 200;
    auto tol = [](double a, double b) { return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(b); };
    const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, tol, iterations);
    return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

double phi_p(const RestModeSet& modes, const BoostContext& ctx, double t) {
    const auto ev = evaluate_boosted(modes, ctx, t);
    if (!(ev.probability > 0.0) || !(ev.probability <= 1.0)) throw ProbabilityOutOfRange(t, ev.probability);
    return invert_survival_rest(modes, ev.probability);
}

LinearityFit linearity_fit(const CurveSeries& series, const TimeWindow& window, const BoostContext& ctx) {
    check_series(series);
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < series.t.size(); ++i) {
        if (window.contains(series.t[i])) {
            x.push_back(series.t[i]);
            y.push_back(series.values[i]);
        }
    }
    if (x.size() < 20) throw std::invalid_argument("linearity_fit: fewer than 20 points inside the window");

    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }

    LinearityFit fit;
    fit.points = x.size();
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.fit_interval = {x.front(), x.back()};
    fit.expected_slope = 1.0 / ctx.gamma;
    fit.relative_slope_error = std::abs(fit.slope - fit.expected_slope) / fit.expected_slope;
    for (std::size_t i = 0; i < x.size(); ++i) {
        fit.max_residual = std::max(fit.max_residual, std::abs(y[i] - (fit.slope * x[i] + fit.intercept)));
        fit.max_scaling_residual = std::max(fit.max_scaling_residual, std::abs(y[i] - x[i] / ctx.gamma));
    }
    return fit;
}

}  // namespace decaylab
