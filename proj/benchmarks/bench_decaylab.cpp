#include <decaylab/decaylab.hpp>

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

using namespace decaylab;

namespace {

RestModeSet curve_b() { return make_modes({80.0, {{1.0, 1.0, 10.0, 0.04}}}); }

RestModeSet three_modes() {
    return make_modes({120.0, {{0.5, 1.0, 10.0, 0.04}, {0.3, 1.7, 0.0, 0.1}, {0.2, 2.5, 6.0, 0.0}}});
}

std::vector<double> logspaced(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a * std::pow(b / a, static_cast<double>(i) / (n - 1));
    return v;
}

void BM_BesselJ1(benchmark::State& state) {
    const auto xs = logspaced(1e-3, 1e3, 256);
    for (auto _ : state)
        for (double x : xs) benchmark::DoNotOptimize(bessel_j1(x));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}

void BM_StruveH1(benchmark::State& state) {
    // range(0) selects the decade: series, quadrature and asymptotic branches
    const double lo = std::pow(10.0, static_cast<double>(state.range(0)));
    const auto xs = logspaced(lo, 10 * lo, 256);
    for (auto _ : state)
        for (double x : xs) benchmark::DoNotOptimize(struve_h1(x));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}

void BM_SurvivalRest(benchmark::State& state) {
    const auto m = three_modes();
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(survival_rest(m, t));
        t = t < 20.0 ? t + 0.01 : 0.0;
    }
}

void BM_SurvivalBoosted(benchmark::State& state) {
    const auto m = state.range(0) == 1 ? curve_b() : three_modes();
    const auto ctx = shifted_kinematics(m, 200.0);
    double t = 2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_boosted(m, ctx, t));
        t = t < 11.0 ? t + 0.01 : 2.0;
    }
}

void BM_ExponentialWindows(benchmark::State& state) {
    const auto m = three_modes();
    const auto ctx = shifted_kinematics(m, 150.0);
    for (auto _ : state) benchmark::DoNotOptimize(exponential_windows(m, ctx));
}

void BM_PhiP(benchmark::State& state) {
    const auto m = curve_b();
    const auto ctx = shifted_kinematics(m, 200.0);
    double t = 20.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(phi_p(m, ctx, t));
        t = t < 40.0 ? t + 0.1 : 20.0;
    }
}

void BM_DirectSurvival(benchmark::State& state) {
    const auto m = curve_b();
    const double t = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(direct_survival(m, 200.0, t));
}

}  // namespace

BENCHMARK(BM_BesselJ1);
BENCHMARK(BM_StruveH1)->DenseRange(-1, 3);
BENCHMARK(BM_SurvivalRest);
BENCHMARK(BM_SurvivalBoosted)->Arg(1)->Arg(3);
BENCHMARK(BM_ExponentialWindows);
BENCHMARK(BM_PhiP);
BENCHMARK(BM_DirectSurvival)->Arg(2)->Arg(11)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
