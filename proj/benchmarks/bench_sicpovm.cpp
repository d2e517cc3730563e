#include <benchmark/benchmark.h>

#include "sicpovm/analytic.hpp"
#include "sicpovm/frame.hpp"
#include "sicpovm/search.hpp"
#include "sicpovm/wh_group.hpp"

using namespace sicpovm;

static void BM_Objective(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const ErrorBasis basis = build_wh_basis(d);
  const Fiducial phi = haar_random_fiducial(d, 1);
  for (auto _ : state) benchmark::DoNotOptimize(objective(phi, basis));
}
BENCHMARK(BM_Objective)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(45);

static void BM_Gradient(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const ErrorBasis basis = build_wh_basis(d);
  const Fiducial phi = haar_random_fiducial(d, 2);
  for (auto _ : state) benchmark::DoNotOptimize(gradient(phi, basis));
}
BENCHMARK(BM_Gradient)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(45);

// Dense fallback path: same operators without the structured flag.
static void BM_GradientDense(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const ErrorBasis wh = build_wh_basis(d);
  const ErrorBasis basis(d, wh.ops(), wh.labels());
  const Fiducial phi = haar_random_fiducial(d, 2);
  for (auto _ : state) benchmark::DoNotOptimize(gradient(phi, basis));
}
BENCHMARK(BM_GradientDense)->Arg(4)->Arg(8)->Arg(16);

static void BM_Minimize(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  SearchConfig config = SearchConfig::defaults(d, 0);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(minimize(config, haar_random_fiducial(d, ++seed)));
}
BENCHMARK(BM_Minimize)->Arg(5)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_CertifySic(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const VectorSet set = orbit(haar_random_fiducial(d, 3), build_wh_basis(d));
  for (auto _ : state) benchmark::DoNotOptimize(certify_sic(set));
}
BENCHMARK(BM_CertifySic)->Arg(4)->Arg(8)->Arg(16)->Arg(24);

static void BM_FramePotential(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const VectorSet set = orbit(haar_random_fiducial(d, 4), build_wh_basis(d));
  for (auto _ : state) benchmark::DoNotOptimize(frame_potential(set, 2));
}
BENCHMARK(BM_FramePotential)->Arg(4)->Arg(8)->Arg(16)->Arg(24);
BENCHMARK_MAIN();
