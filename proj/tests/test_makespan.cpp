#include "doctest.h"

#include "defrag/error.hpp"
#include "defrag/makespan_sim.hpp"

#include <algorithm>

using namespace defrag;

namespace {

std::vector<WorkloadItem> micro_workload() {
  return {{1, "ll", 100}, {2, "ll", 4}, {3, "ll", 100}, {4, "llll", 50}};
}

SimReport run(const std::vector<WorkloadItem> &items, Policy policy, int length = 8) {
  return simulate_schedule(items, SimConfig{Device::build(length), policy, 0});
}

struct PortUse {
  SimTime begin;
  SimTime end;
};

/// Invariants that must hold for any simulated schedule.
void check_schedule(const std::vector<WorkloadItem> &items, const SimReport &report) {
  REQUIRE(report.timeline.size() == items.size());
  std::vector<PortUse> port;
  SimTime last = 0;
  SimTime cost = 0;
  int relocations = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const ModuleTimeline &t = report.timeline[i];
    CHECK(t.id == items[i].id);
    CHECK(t.config_end - t.config_begin == items[i].size());
    port.push_back({t.config_begin, t.config_end});
    SimTime executed = 0;
    for (const RunInterval &r : t.runs) {
      CHECK(r.begin <= r.end);
      executed += r.end - r.begin;
    }
    CHECK(executed == items[i].duration);
    for (const Relocation &r : t.relocations) {
      CHECK(r.end - r.begin == items[i].size());
      port.push_back({r.begin, r.end});
      cost += r.end - r.begin;
      ++relocations;
    }
    CHECK(t.finish == t.config_end + items[i].duration + items[i].size() * static_cast<SimTime>(t.relocations.size()));
    CHECK(report.makespan >= items[i].size() + items[i].duration);
    last = std::max(last, t.finish);
  }
  CHECK(report.makespan == last);
  CHECK(report.relocations == relocations);
  CHECK(report.total_relocation_cost == cost);
  std::sort(port.begin(), port.end(), [](PortUse a, PortUse b) { return a.begin < b.begin; });
  for (std::size_t k = 1; k < port.size(); ++k) CHECK(port[k - 1].end <= port[k].begin);
}

}  // namespace

TEST_CASE("micro trace without defragmentation") {
  SimReport r = run(micro_workload(), Policy::None);
  // D waits for B (t=8), finds no contiguous 4 slots, then waits for A (t=102).
  CHECK(r.makespan == 156);
  CHECK(r.relocations == 0);
  CHECK(r.defrag_invocations == 0);
  CHECK(r.timeline[3].config_begin == 102);
  check_schedule(micro_workload(), r);
}

TEST_CASE("micro trace with defragmentation") {
  for (Policy policy : {Policy::Greedy, Policy::Tabu}) {
    SimReport r = run(micro_workload(), policy);
    check_schedule(micro_workload(), r);
    // At t=8 A jumps to [6, 8) (first of two equally good moves), D is
    // configured at t=10 and C stays put.
    CHECK(r.relocations == 1);
    CHECK(r.total_relocation_cost == 2);
    CHECK(r.timeline[3].config_begin == 10);
    CHECK(r.timeline[0].finish == 104);
    CHECK(r.timeline[2].finish == 106);
    CHECK(r.makespan == 106);
  }
}

TEST_CASE("empty workload") {
  SimReport r = run({}, Policy::Tabu);
  CHECK(r.makespan == 0);
  CHECK(r.timeline.empty());
}

TEST_CASE("oversized requests are rejected") {
  CHECK_THROWS_AS(run({{1, std::string(9, 'l'), 5}}, Policy::None), DefragError);
  CHECK_THROWS_AS(simulate_schedule({{1, "m", 5}}, SimConfig{Device::build(4), Policy::None, 0}), DefragError);
}

TEST_CASE("policies agree when everything fits") {
  std::vector<WorkloadItem> items = generate_workload(10, 5, 20, 3);
  for (Policy p : {Policy::None, Policy::Greedy, Policy::Tabu}) {
    SimReport r = run(items, p, 200);
    CHECK(r.defrag_invocations == 0);
    CHECK(r.total_wait == 0);
    check_schedule(items, r);
    CHECK(r.makespan == run(items, Policy::None, 200).makespan);
  }
}

TEST_CASE("generate_workload") {
  auto a = generate_workload(300, 50, 100, 9);
  CHECK(a.size() == 300);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == static_cast<ModuleId>(i + 1));
    CHECK(a[i].size() >= 1);
    CHECK(a[i].size() <= 200);
    CHECK(a[i].duration >= 1);
  }
  auto b = generate_workload(300, 50, 100, 9);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].pattern == b[i].pattern);
    CHECK(a[i].duration == b[i].duration);
  }
  CHECK(generate_workload(0, 50, 100, 9).empty());
  for (const auto &item : generate_workload(200, 190, 10, 4)) CHECK(item.size() <= 200);
}

TEST_CASE("random schedules satisfy the timing invariants") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    auto items = generate_workload(60, 40, 80, seed);
    for (Policy p : {Policy::None, Policy::Greedy, Policy::Tabu}) check_schedule(items, run(items, p, 200));
  }
}

TEST_CASE("policy names") {
  CHECK(parse_policy("none") == Policy::None);
  CHECK(parse_policy("greedy") == Policy::Greedy);
  CHECK(to_string(Policy::Tabu) == "tabu");
  CHECK_FALSE(parse_policy("lrs").has_value());
}
