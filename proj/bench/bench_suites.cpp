#include <benchmark/benchmark.h>

#include <omp.h>

#include "sasaki/suites.hpp"

using namespace sasaki;

namespace {

const char* const kSuites[] = {"axioms", "connection", "curvature", "kappa-mu", "oracle-crosscheck", "brackets"};

void BM_Suite(benchmark::State& state, Execution exec) {
  SuiteConfig cfg;
  cfg.suite = kSuites[state.range(0)];
  cfg.params.n = 3;
  cfg.params.nu = 1;
  cfg.params.c = 1.0;
  cfg.points = 16;
  cfg.samples = 10;
  cfg.execution = exec;
  for (auto _ : state) {
    CheckReport r = run_suite(cfg);
    benchmark::DoNotOptimize(r);
  }
  state.SetLabel(cfg.suite);
  state.counters["threads"] = exec == Execution::kParallel ? omp_get_max_threads() : 1;
}

void BM_Serial(benchmark::State& state) { BM_Suite(state, Execution::kSerial); }
void BM_Parallel(benchmark::State& state) { BM_Suite(state, Execution::kParallel); }

}  // namespace

BENCHMARK(BM_Serial)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
