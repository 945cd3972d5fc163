#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace decaylab::quad {

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& z) { return std::abs(z); }

// Neumaier-compensated running sum; order-deterministic.
template <class T>
class CompensatedSum {
public:
    void add(const T& x) {
        if constexpr (std::is_same_v<T, std::complex<double>>) {
            re_.add(x.real());
            im_.add(x.imag());
        } else {
            const T t = sum_ + x;
            if (std::abs(sum_) >= std::abs(x))
                comp_ += (sum_ - t) + x;
            else
                comp_ += (x - t) + sum_;
            sum_ = t;
        }
    }
    T value() const {
        if constexpr (std::is_same_v<T, std::complex<double>>)
            return {re_.value(), im_.value()};
        else
            return sum_ + comp_;
    }

private:
    struct Empty {
        void add(double) {}
        double value() const { return 0.0; }
    };
    using Part = std::conditional_t<std::is_same_v<T, std::complex<double>>, CompensatedSum<double>, Empty>;
    T sum_{};
    T comp_{};
    Part re_{};
    Part im_{};
};

struct Budget {
    std::size_t max_depth = 40;
    std::size_t max_evaluations = 5'000'000;
};

template <class T>
struct Result {
    T value{};
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
};

// 7-point Gauss / 15-point Kronrod on [-1, 1].
struct GK15 {
    static constexpr std::array<double, 8> xk = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    static constexpr std::array<double, 8> wk = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr std::array<double, 4> wg = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

    template <class F>
    static auto apply(F& f, double a, double b) {
        using T = decltype(f(a));
        const double c = 0.5 * (a + b);
        const double h = 0.5 * (b - a);
        const T fc = f(c);
        T kron = fc * wk[7];
        T gauss = fc * wg[3];
        for (std::size_t i = 0; i < 7; ++i) {
            const double dx = h * xk[i];
            const T sum = f(c - dx) + f(c + dx);
            kron += sum * wk[i];
            if (i % 2 == 1) gauss += sum * wg[i / 2];
        }
        return std::pair<T, double>{kron * h, magnitude((kron - gauss) * h)};
    }
};

namespace detail {

template <class F, class T>
void adapt(F& f, double a, double b, double tol, std::size_t depth, const Budget& budget, CompensatedSum<T>& sum,
           Result<T>& res) {
    auto [value, err] = GK15::apply(f, a, b);
    res.evaluations += 15;
    const bool can_split = depth < budget.max_depth && res.evaluations < budget.max_evaluations;
    if (err <= tol || !can_split || !(b - a > 4.0 * std::abs(a) * 1e-16)) {
        if (err > tol) res.converged = false;
        sum.add(value);
        res.error += err;
        return;
    }
    const double mid = 0.5 * (a + b);
    adapt(f, a, mid, 0.5 * tol, depth + 1, budget, sum, res);
    adapt(f, mid, b, 0.5 * tol, depth + 1, budget, sum, res);
}

}  // namespace detail

/// Adaptive GK15 over consecutive breakpoints. The tolerance is distributed
/// over panels in proportion to their length.
template <class F>
auto integrate(F&& f, std::span<const double> breakpoints, double tol, const Budget& budget = {}) {
    using T = decltype(f(0.0));
    Result<T> res;
    CompensatedSum<T> sum;
    if (breakpoints.size() < 2) return res;
    const double total = breakpoints.back() - breakpoints.front();
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double a = breakpoints[i];
        const double b = breakpoints[i + 1];
        if (!(b > a)) continue;
        detail::adapt(f, a, b, tol * (b - a) / total, 0, budget, sum, res);
    }
    res.value = sum.value();
    return res;
}

template <class F>
auto integrate(F&& f, double a, double b, double tol, const Budget& budget = {}) {
    const std::array<double, 2> pts{a, b};
    return integrate(std::forward<F>(f), std::span<const double>(pts), tol, budget);
}

struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]; computed once per n and cached.
const GaussLegendreRule& gauss_legendre(std::size_t n);

/// Sorted, deduplicated copy of the points lying in [lo, hi], with lo and hi included.
std::vector<double> clip_breakpoints(std::vector<double> points, double lo, double hi);

}  // namespace decaylab::quad
