#include <benchmark/benchmark.h>

#include <random>

#include "qpgame/solver.hpp"

namespace {

using namespace qpgame;

void BM_Solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  CallCount calls = 0;
  for (auto _ : state) {
    const auto r = solve(n);
    calls = r.stats.calls;
    benchmark::DoNotOptimize(r.outcome);
  }
  state.counters["calls"] = static_cast<double>(calls);
  state.counters["calls/s"] = benchmark::Counter(static_cast<double>(calls) * state.iterations(),
                                                 benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Solve)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_SolveRepresentation(benchmark::State& state) {
  SearchOptions o;
  o.representation = state.range(1) == 0 ? Representation::Compact : Representation::General;
  for (auto _ : state) benchmark::DoNotOptimize(solve(static_cast<int>(state.range(0)), o).outcome);
  state.SetLabel(state.range(1) == 0 ? "compact" : "general");
}
BENCHMARK(BM_SolveRepresentation)->Args({10, 0})->Args({10, 1})->Unit(benchmark::kMillisecond);

void BM_SolveWithoutForbidden(benchmark::State& state) {
  SearchOptions o;
  o.use_forbidden_pruning = false;
  for (auto _ : state) benchmark::DoNotOptimize(solve(static_cast<int>(state.range(0)), o).outcome);
}
BENCHMARK(BM_SolveWithoutForbidden)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(oracle_solve(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Oracle)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_AvailablePositions(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rep = state.range(1) == 0 ? Representation::Compact : Representation::General;
  GameState s{Dims(n), rep};
  std::mt19937_64 rng(1);
  for (int i = 0; i < n / 3; ++i) {
    const auto avail = s.available_positions();
    s.place(avail[rng() % avail.size()]);
  }
  for (auto _ : state) benchmark::DoNotOptimize(s.available_positions());
  state.SetLabel(state.range(1) == 0 ? "compact" : "general");
}
BENCHMARK(BM_AvailablePositions)->Args({16, 0})->Args({16, 1});

}  // namespace

BENCHMARK_MAIN();
