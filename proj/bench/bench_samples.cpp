// Serial reference against the OpenMP sample loop on the same inputs.
#include <benchmark/benchmark.h>

#include <functional>

#include "thetaforge/numeric.hpp"
#include "thetaforge/painleve.hpp"
#include "thetaforge/theta_ode.hpp"

using namespace tf;

namespace {

std::vector<cplx> taus(int n) {
    std::vector<cplx> v;
    for (int i = 0; i < n; ++i) v.push_back(cplx(-0.5 + double(i) / n, 1.0 + 0.5 * double(i % 7) / 7.0));
    return v;
}

const std::function<double(const cplx&)> scalar_worst = [](const cplx& t) {
    double m = 0.0;
    for (const auto& [k, r] : scalar_equation_residuals(t)) m = std::max(m, r.rel());
    return m;
};

void BM_scalar_serial(benchmark::State& s) {
    const auto in = taus(int(s.range(0)));
    for (auto _ : s) benchmark::DoNotOptimize(sample_map_serial(in, scalar_worst));
}
void BM_scalar_parallel(benchmark::State& s) {
    const auto in = taus(int(s.range(0)));
    for (auto _ : s) benchmark::DoNotOptimize(sample_map(in, scalar_worst));
}
BENCHMARK(BM_scalar_serial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scalar_parallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();

std::vector<double> xs(int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(0.1 + 0.8 * double(i) / (n - 1));
    return v;
}

void BM_pvi_serial(benchmark::State& s) {
    const auto x = xs(int(s.range(0)));
    for (auto _ : s) benchmark::DoNotOptimize(pvi_residual_serial({0.31, 0.2}, x));
}
void BM_pvi_parallel(benchmark::State& s) {
    const auto x = xs(int(s.range(0)));
    for (auto _ : s) benchmark::DoNotOptimize(pvi_residual({0.31, 0.2}, x));
}
BENCHMARK(BM_pvi_serial)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pvi_parallel)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
