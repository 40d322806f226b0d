#pragma once

#include "defrag/layout.hpp"

#include <cstddef>
#include <optional>

namespace defrag {

inline constexpr std::size_t kDefaultOracleBudget = 10'000'000;

struct OracleOptions {
  /// Maximum number of distinct states to visit.
  std::size_t budget = kDefaultOracleBudget;
  /// Treat modules with identical patterns as interchangeable when
  /// deduplicating states. Off by default: module identities stay distinct.
  bool interchangeable = false;
};

struct OracleResult {
  int optimum_max_free = 0;
  int min_moves_to_optimum = 0;
  std::size_t states_explored = 0;
  /// The budget ran out; optimum_max_free is then only a lower bound.
  bool truncated = false;
};

/**
 * @brief Exact optimum by breadth-first search over single relocations
 *
 * Explores every layout reachable through legal moves (any feasible start of
 * any module). The search stops early once the largest free interval equals
 * the total free space, since nothing larger exists.
 */
OracleResult bfs_optimum(const Layout &layout, const OracleOptions &options = {});

struct MinMovesResult {
  /// Fewest moves giving a free interval of at least the target size;
  /// empty when unreachable (or not found before truncation).
  std::optional<int> moves;
  std::size_t states_explored = 0;
  bool truncated = false;
};

MinMovesResult min_moves_to_size(const Layout &layout, int target_size, const OracleOptions &options = {});

}  // namespace defrag
