#include <benchmark/benchmark.h>

#include "dirac2d/oracle.hpp"
#include "dirac2d/special.hpp"
#include "dirac2d/spectrum.hpp"

using namespace dirac2d;

static void BM_FindStates(benchmark::State& state) {
  const FieldConfiguration cfg{1.0, 1.0, 1.0, 2.0, 1.0, 1.0, 1.0};
  SearchWindow window = default_window(cfg);
  window.scan_points = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_states(cfg, SymmetryLimit::Pseudospin, {1, 1}, window));
  }
}
BENCHMARK(BM_FindStates)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

static void BM_FdEigenvalue(benchmark::State& state) {
  const oracle::RadialGrid grid{12.0, static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::fd_eigenvalue(1.0, 0.75, grid, 2));
  }
}
BENCHMARK(BM_FdEigenvalue)->Arg(1000)->Arg(6000)->Unit(benchmark::kMillisecond);

static void BM_Laguerre(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(special::laguerre(n, 1.5, x));
    x += 1e-9;
  }
}
BENCHMARK(BM_Laguerre)->Arg(2)->Arg(10)->Arg(50);
BENCHMARK_MAIN();
