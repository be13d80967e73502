// Wall-time benchmarks for the stage solver and the tree oracle. The block
// solver's thread scaling is also covered by the `pcsrk bench` subcommand;
// here the interest is per-step cost versus problem size and solver mode.
#include <benchmark/benchmark.h>

#include "pcsrk/harness.hpp"
#include "pcsrk/ptrees.hpp"

using namespace pcsrk;

namespace {

StepConfig step_config(double h, SolverMode mode, int threads = 1) {
  StepConfig cfg;
  cfg.h = h;
  cfg.solver_mode = mode;
  cfg.threads = threads;
  return cfg;
}

void bench_lv_step(benchmark::State& state, SolverMode mode) {
  PoissonSystem sys = lotka_volterra();
  PcsrkTableau tab = fourth_order_family(optimal_family_params(-234.0));
  Vec y0(3);
  y0 << 1.0, 1.9, 0.5;
  StepConfig cfg = step_config(0.05, mode);
  for (auto _ : state) {
    StepResult r = step(sys, tab, y0, cfg);
    benchmark::DoNotOptimize(r.y1);
  }
}

}  // namespace

static void BM_LVStepBlock(benchmark::State& state) { bench_lv_step(state, SolverMode::block); }
BENCHMARK(BM_LVStepBlock);

static void BM_LVStepFull(benchmark::State& state) { bench_lv_step(state, SolverMode::full); }
BENCHMARK(BM_LVStepFull);

static void BM_SyntheticStep(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const bool block = state.range(1) != 0;
  PoissonSystem sys = synthetic_poisson(dim, 2024);
  Vec y0 = synthetic_initial_state(dim, 2024);
  PcsrkTableau tab = fourth_order_family(optimal_family_params(-234.0));
  StepConfig cfg = step_config(0.05, block ? SolverMode::block : SolverMode::full);
  for (auto _ : state) {
    StepResult r = step(sys, tab, y0, cfg);
    benchmark::DoNotOptimize(r.y1);
  }
  state.SetLabel(block ? "block" : "full");
}
BENCHMARK(BM_SyntheticStep)
    ->Args({60, 1})
    ->Args({60, 0})
    ->Args({150, 1})
    ->Args({150, 0})
    ->Args({300, 1})
    ->Args({300, 0})
    ->Unit(benchmark::kMillisecond);

static void BM_SyntheticStepThreads(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  PoissonSystem sys = synthetic_poisson(300, 2024);
  Vec y0 = synthetic_initial_state(300, 2024);
  PcsrkTableau tab = fourth_order_family(optimal_family_params(-234.0));
  StepConfig cfg = step_config(0.05, SolverMode::block, threads);
  for (auto _ : state) {
    StepResult r = step(sys, tab, y0, cfg);
    benchmark::DoNotOptimize(r.y1);
  }
}
BENCHMARK(BM_SyntheticStepThreads)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_TreeCertification(benchmark::State& state) {
  const int max_order = static_cast<int>(state.range(0));
  PcsrkTableau tab = fourth_order_family(optimal_family_params(-234.0));
  for (auto _ : state) {
    int order = certified_order(tab, max_order);
    benchmark::DoNotOptimize(order);
  }
}
BENCHMARK(BM_TreeCertification)->Arg(4)->Arg(5);

BENCHMARK_MAIN();
