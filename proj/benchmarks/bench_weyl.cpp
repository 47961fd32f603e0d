#include <benchmark/benchmark.h>

#include "weylkit/catalog.hpp"
#include "weylkit/spectral.hpp"

using namespace weylkit;

static void BM_PropagateDirichlet(benchmark::State& state) {
  const Example ex = dirichlet_unit();
  const Mat y0 = Mat::Identity(2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(propagate(ex.problem.sys, cd(50.0, 1.0), y0, 0.0, 1.0));
}
BENCHMARK(BM_PropagateDirichlet);

static void BM_MTau(benchmark::State& state) {
  const Example ex = make_example(state.range(0) == 0 ? "free_half_line" : state.range(0) == 1 ? "cubic_half_line"
                                                                                                : "case1_synthetic");
  for (auto _ : state) benchmark::DoNotOptimize(m_tau(ex.problem, ex.tau, cd(1.0, -0.5)).m);
}
BENCHMARK(BM_MTau)->DenseRange(0, 2);

static void BM_StieltjesDirichlet(benchmark::State& state) {
  const Example ex = dirichlet_unit();
  const auto grid = linspace(-5.0, 60.0, static_cast<int>(state.range(0)) + 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        stieltjes_inversion([&](cd l) { return m_tau(ex.problem, ex.tau, l).m; }, grid).total_mass);
}
BENCHMARK(BM_StieltjesDirichlet)->Arg(13)->Arg(26)->Unit(benchmark::kMillisecond);

static void BM_Fourier(benchmark::State& state) {
  const Example ex = free_half_line();
  const WeightedFunction f{[](double t) {
                             Vec v = Vec::Zero(2);
                             if (t > 0.0 && t < 1.0) v(0) = std::exp(-1.0 / (t * (1.0 - t)));
                             return v;
                           },
                           0.0, 1.0};
  const auto s = linspace(0.5, 50.0, 64);
  for (auto _ : state) benchmark::DoNotOptimize(fourier(ex.problem, f, s));
}
BENCHMARK(BM_Fourier)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
