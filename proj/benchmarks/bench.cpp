// Microbenchmarks for the hot paths: min-cut expansion moves, full sweeps,
// the local LP on both solver paths, cycle separation, and the desk-scale
// oracles. Instances are seeded, so runs are comparable across builds.
#include "pottscert/certify.hpp"
#include "pottscert/expansion.hpp"
#include "pottscert/instances.hpp"
#include "pottscert/locallp.hpp"
#include "pottscert/model.hpp"
#include "pottscert/objective.hpp"
#include "pottscert/oracle.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace pottscert;

namespace {

PottsInstance grid(int h, int w, int k) { return gen_grid(h, w, k, 11); }

void BM_OptimalExpansion(benchmark::State& state) {
  PottsInstance inst = grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                            static_cast<int>(state.range(2)));
  Labeling zeros(inst.n, 0);
  for (auto _ : state) {
    Labeling y = optimal_expansion(inst, zeros, 1);
    benchmark::DoNotOptimize(y);
  }
  state.SetItemsProcessed(state.iterations() * inst.n);
}
BENCHMARK(BM_OptimalExpansion)
    ->Args({10, 10, 2})
    ->Args({20, 20, 4})
    ->Args({30, 40, 2})
    ->Unit(benchmark::kMillisecond);

void BM_ExpansionConverge(benchmark::State& state) {
  PottsInstance inst = grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                            static_cast<int>(state.range(2)));
  Labeling zeros(inst.n, 0);
  std::vector<int> order(inst.k);
  for (int i = 0; i < inst.k; ++i) order[i] = i;
  for (auto _ : state) {
    auto [x, stats] = run_expansion(inst, zeros, order);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_ExpansionConverge)->Args({10, 10, 4})->Args({20, 20, 3})->Unit(benchmark::kMillisecond);

void BM_LocalLpExact(benchmark::State& state) {
  PottsInstance inst = grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 3);
  for (auto _ : state) {
    LpResult r = solve_primal_dual(inst, SolverPath::exact);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_LocalLpExact)->Args({2, 3})->Args({3, 3})->Unit(benchmark::kMillisecond);

void BM_LocalLpFloat(benchmark::State& state) {
  PottsInstance inst = grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                            static_cast<int>(state.range(2)));
  for (auto _ : state) {
    LpResult r = solve_primal_dual(inst, SolverPath::floating);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_LocalLpFloat)->Args({3, 3, 3})->Args({6, 8, 3})->Args({10, 10, 2})
    ->Unit(benchmark::kMillisecond);

void BM_SeparateCycles(benchmark::State& state) {
  // Separation runs on fractional LP optima; solve once outside the loop.
  static const PottsInstance inst = grid(6, 8, 3);
  static const LpResult lp = solve_primal_dual(inst, SolverPath::floating);
  for (auto _ : state) {
    auto cuts = separate_cycles(inst, lp.primal);
    benchmark::DoNotOptimize(cuts);
  }
}
BENCHMARK(BM_SeparateCycles)->Unit(benchmark::kMillisecond);

void BM_BruteMap(benchmark::State& state) {
  PottsInstance inst = grid(3, 3, 3);
  for (auto _ : state) {
    MapResult r = brute_map(inst);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_BruteMap)->Unit(benchmark::kMillisecond);

void BM_CertifiedBound(benchmark::State& state) {
  PottsInstance inst = grid(2, 3, 3);
  Labeling xs = brute_map(inst).labeling;
  QualityObjective ham = make_hamming_objective(inst, xs);
  for (auto _ : state) {
    BoundReport rep = solve_certified_bound(inst, xs, ham);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_CertifiedBound)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
