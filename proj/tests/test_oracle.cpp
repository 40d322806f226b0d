#include "doctest.h"

#include "defrag/instance_gen.hpp"
#include "defrag/oracle.hpp"
#include "defrag/random.hpp"
#include "defrag/strategies.hpp"
#include "support/brute_force.hpp"

#include <algorithm>

using namespace defrag;
using namespace defrag::testing;

TEST_CASE("bfs_optimum on the two-module fixture") {
  OracleResult r = bfs_optimum(two_module_fixture());
  CHECK_FALSE(r.truncated);
  CHECK(r.optimum_max_free == 6);
  // M1 -> 8 then M2 -> 0 leaves [2, 8) free.
  CHECK(r.min_moves_to_optimum == 2);
  CHECK(exhaustive_min_moves(two_module_fixture(), 6, 4) == 2);
}

TEST_CASE("bfs_optimum trivial cases") {
  Layout packed = Layout::build(Device::build(4), {{homogeneous_module(1, 2), 0}, {homogeneous_module(2, 2), 2}});
  OracleResult r = bfs_optimum(packed);
  CHECK(r.optimum_max_free == 0);
  CHECK(r.min_moves_to_optimum == 0);

  OracleResult empty = bfs_optimum(Layout::empty(Device::build(7)));
  CHECK(empty.optimum_max_free == 7);
  CHECK(empty.min_moves_to_optimum == 0);
}

TEST_CASE("lower-bound instance anchors") {
  Layout n2 = lower_bound_instance(2);
  MinMovesResult to_four = min_moves_to_size(n2, 4);
  REQUIRE(to_four.moves.has_value());
  CHECK(*to_four.moves == 3);
  CHECK(exhaustive_min_moves(n2, 4, 5) == 3);

  Layout n4 = lower_bound_instance(4);
  OracleResult r4 = bfs_optimum(n4);
  CHECK_FALSE(r4.truncated);
  CHECK(r4.optimum_max_free == 6);
  CHECK(r4.min_moves_to_optimum >= 6);
  CHECK(exhaustive_min_moves(n4, 6, 10) == r4.min_moves_to_optimum);
}

TEST_CASE("min_moves_to_size") {
  CHECK(min_moves_to_size(two_module_fixture(), 1).moves == 0);
  CHECK(min_moves_to_size(two_module_fixture(), 3).moves == 0);
  CHECK(min_moves_to_size(two_module_fixture(), 5).moves == 1);
  MinMovesResult too_big = min_moves_to_size(two_module_fixture(), 7);
  CHECK_FALSE(too_big.moves.has_value());
  CHECK_FALSE(too_big.truncated);

  // k = 1: the single gap already has size kB.
  ThreePartitionInstance one = three_partition_instance({3, 3, 4}, 10);
  CHECK(min_moves_to_size(one.layout, 10).moves == 0);
  // Emptying the element region takes all three element modules.
  CHECK(min_moves_to_size(one.layout, 11).moves == std::nullopt);
}

TEST_CASE("budget exhaustion is flagged") {
  OracleOptions tiny;
  tiny.budget = 5;
  OracleResult r = bfs_optimum(lower_bound_instance(6), tiny);
  CHECK(r.truncated);
  CHECK(r.states_explored <= 5);
  MinMovesResult m = min_moves_to_size(lower_bound_instance(6), 8, tiny);
  CHECK(m.truncated);
  CHECK_FALSE(m.moves.has_value());
}

TEST_CASE("bfs visits exactly the reachable configurations") {
  Random rng(8);
  for (int k = 0; k < 60; ++k) {
    const int length = rng.uniform_int(5, 11);
    Layout layout = random_instance({Device::build(length), 0.3 + 0.5 * rng.uniform01(), rng.next_u64()}).layout;
    if (layout.module_count() > 4) continue;
    OracleOptions all;
    // Make the early exit unreachable by asking for an impossible size.
    MinMovesResult r = min_moves_to_size(layout, length + 1, all);
    const auto reachable = reachable_configurations(layout);
    CHECK(r.states_explored == reachable.size());

    OracleResult opt = bfs_optimum(layout);
    int best = 0;
    for (const auto &starts : reachable) best = std::max(best, brute_max_free(layout.with_starts(starts)));
    CHECK(opt.optimum_max_free == best);
    CHECK(exhaustive_min_moves(layout, best, 8) == opt.min_moves_to_optimum);
  }
}

TEST_CASE("interchangeable mode agrees on the optimum") {
  Random rng(77);
  for (int k = 0; k < 40; ++k) {
    const int length = rng.uniform_int(6, 14);
    std::vector<Placement> placements;
    int cursor = rng.uniform_int(0, 1);
    ModuleId id = 1;
    while (cursor + 2 <= length && id <= 5) {
      const int size = rng.uniform_int(1, 2);
      placements.push_back({homogeneous_module(id++, size), cursor});
      cursor += size + rng.uniform_int(0, 2);
    }
    Layout layout = Layout::build(Device::build(length), placements);
    OracleOptions canonical;
    canonical.interchangeable = true;
    OracleResult plain = bfs_optimum(layout);
    OracleResult merged = bfs_optimum(layout, canonical);
    CHECK(plain.optimum_max_free == merged.optimum_max_free);
    CHECK(plain.min_moves_to_optimum == merged.min_moves_to_optimum);
    // Without the early exit the merged space is never larger.
    const int impossible = length + 1;
    CHECK(min_moves_to_size(layout, impossible, canonical).states_explored <=
          min_moves_to_size(layout, impossible).states_explored);
  }
}

TEST_CASE("moderate density instances can always be fully connected") {
  Random rng(12);
  int checked = 0;
  while (checked < 80) {
    const int length = rng.uniform_int(6, 16);
    Layout layout = random_instance({Device::build(length), 0.1 + 0.35 * rng.uniform01(), rng.next_u64()}).layout;
    if (!satisfies_moderate_density(layout) || layout.module_count() > 5) continue;
    ++checked;
    OracleResult r = bfs_optimum(layout);
    CHECK(r.optimum_max_free == layout.free_slots());
    // BFS depth never exceeds a heuristic path to the same size.
    CHECK(r.min_moves_to_optimum <= static_cast<int>(left_right_shift(layout).moves.size()));
  }
}
