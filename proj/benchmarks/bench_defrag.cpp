#include "defrag/instance_gen.hpp"
#include "defrag/makespan_sim.hpp"
#include "defrag/neighborhood.hpp"
#include "defrag/oracle.hpp"
#include "defrag/strategies.hpp"

#include <benchmark/benchmark.h>

using namespace defrag;

namespace {

std::vector<Layout> sample_layouts(const Device &device, double target, int count) {
  std::vector<Layout> out;
  for (int k = 0; k < count; ++k) {
    out.push_back(random_instance({device, target, static_cast<std::uint64_t>(k + 1)}).layout);
  }
  return out;
}

Device device_for(int arg) { return arg == 0 ? homogeneous_94() : heterogeneous_94(); }

}  // namespace

static void BM_NeighborhoodScan(benchmark::State &state) {
  const auto layouts = sample_layouts(device_for(static_cast<int>(state.range(0))), 0.7, 64);
  std::size_t k = 0;
  for (auto _ : state) {
    const Layout &layout = layouts[k++ % layouts.size()];
    Neighborhood nb(layout);
    int best = 0;
    for (const auto &c : nb.candidates()) best = std::max(best, nb.max_free_after(c));
    benchmark::DoNotOptimize(best);
  }
}
BENCHMARK(BM_NeighborhoodScan)->Arg(0)->Arg(1);

static void BM_Greedy(benchmark::State &state) {
  const auto layouts = sample_layouts(device_for(static_cast<int>(state.range(0))), 0.7, 64);
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(greedy_defrag(layouts[k++ % layouts.size()]).best_max_free);
}
BENCHMARK(BM_Greedy)->Arg(0)->Arg(1);

static void BM_Tabu(benchmark::State &state) {
  const auto layouts = sample_layouts(device_for(static_cast<int>(state.range(0))), 0.7, 64);
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(tabu_defrag(layouts[k++ % layouts.size()]).best_max_free);
}
BENCHMARK(BM_Tabu)->Arg(0)->Arg(1);

// Many small modules on a long device: tabu cost grows with n squared.
static void BM_TabuLongDevice(benchmark::State &state) {
  std::vector<Placement> placements;
  const int n = static_cast<int>(state.range(0));
  for (int i = 0; i < n; ++i) placements.push_back({homogeneous_module(i + 1, 2), 4 * i + 1 + (i % 3)});
  const Layout layout = Layout::build(Device::build(4 * n + 4), placements);
  for (auto _ : state) benchmark::DoNotOptimize(tabu_defrag(layout).best_max_free);
  state.SetComplexityN(n);
}
BENCHMARK(BM_TabuLongDevice)->RangeMultiplier(2)->Range(8, 64)->Complexity();

static void BM_LeftRightShift(benchmark::State &state) {
  std::vector<Layout> layouts;
  for (const Layout &l : sample_layouts(Device::build(static_cast<int>(state.range(0))), 0.25, 256)) {
    if (satisfies_moderate_density(l)) layouts.push_back(l);
  }
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(left_right_shift(layouts[k++ % layouts.size()]).moves.size());
}
BENCHMARK(BM_LeftRightShift)->Arg(94)->Arg(1000);

static void BM_OracleLowerBound(benchmark::State &state) {
  const Layout layout = lower_bound_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bfs_optimum(layout).states_explored);
}
BENCHMARK(BM_OracleLowerBound)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_MakespanSim(benchmark::State &state) {
  const auto workload = generate_workload(200, 50, 1000, 1);
  const Policy policy = static_cast<Policy>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_schedule(workload, SimConfig{Device::build(200), policy, 1}).makespan);
  }
}
BENCHMARK(BM_MakespanSim)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
