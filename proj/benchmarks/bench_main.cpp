#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "femtonet/config.hpp"
#include "femtonet/neighbor_list.hpp"
#include "femtonet/ncl_bench.hpp"
#include "femtonet/sim.hpp"
#include "femtonet/traffic.hpp"

using namespace femtonet;

static void BM_ErlangB(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  double a = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(erlang_b(K, a));
    a = a < 50 ? a + 0.1 : 0.1;
  }
}
BENCHMARK(BM_ErlangB)->Arg(4)->Arg(20)->Arg(123);

static void BM_MacroChain(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(macro_blocking_dropping(0.8, 0.3, 1.0 / 80, N, N / 4));
  }
}
BENCHMARK(BM_MacroChain)->Arg(20)->Arg(100);

static void BM_FixedPoint(benchmark::State& state) {
  auto config = parse_config("", {"topology.n=" + std::to_string(state.range(0))});
  const auto p = traffic_params(config);
  for (auto _ : state) benchmark::DoNotOptimize(solve_fixed_point(p));
}
BENCHMARK(BM_FixedPoint)->Arg(0)->Arg(1000);

static void BM_NeighborListTrials(benchmark::State& state) {
  const auto config = parse_config("");
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(ncl_trials(config, n, seed++, 100));
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_NeighborListTrials)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_ShortSimulation(benchmark::State& state) {
  const auto config =
      parse_config("", {"topology.n=" + std::to_string(state.range(0)), "sim.horizon_s=2000"});
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const auto r = run_simulation(config, seed++);
    benchmark::DoNotOptimize(r.events);
  }
}
BENCHMARK(BM_ShortSimulation)->Arg(0)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
