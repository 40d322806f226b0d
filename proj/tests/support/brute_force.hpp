#pragma once

// Slot-by-slot reference implementations used only by the tests. They share
// no code with the library beyond the Layout accessors.

#include "defrag/layout.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace defrag::testing {

inline std::vector<char> occupied_mask(const Layout &layout) {
  std::vector<char> mask(static_cast<std::size_t>(layout.device().length()), 0);
  for (std::size_t i = 0; i < layout.module_count(); ++i) {
    for (int s = 0; s < layout.module(i).size(); ++s) mask[static_cast<std::size_t>(layout.start(i) + s)] = 1;
  }
  return mask;
}

inline std::vector<FreeInterval> brute_free_intervals(const Layout &layout) {
  std::vector<FreeInterval> out;
  auto mask = occupied_mask(layout);
  for (int s = 0; s < static_cast<int>(mask.size()); ++s) {
    if (mask[static_cast<std::size_t>(s)]) continue;
    if (!out.empty() && out.back().end() == s) {
      ++out.back().size;
    } else {
      out.push_back({s, 1});
    }
  }
  return out;
}

inline int brute_max_free(const Layout &layout) {
  int best = 0;
  for (auto f : brute_free_intervals(layout)) best = std::max(best, f.size);
  return best;
}

/// Every start whose window avoids all occupied slots and matches the pattern.
inline std::vector<int> brute_feasible(const Layout &layout, std::size_t index) {
  const ModuleSpec &m = layout.module(index);
  auto mask = occupied_mask(layout);
  std::vector<int> out;
  for (int p = 0; p + m.size() <= layout.device().length(); ++p) {
    bool ok = true;
    for (int s = 0; s < m.size() && ok; ++s) {
      ok = !mask[static_cast<std::size_t>(p + s)] &&
           layout.device().slot_types()[static_cast<std::size_t>(p + s)] == m.pattern[static_cast<std::size_t>(s)];
    }
    if (ok) out.push_back(p);
  }
  return out;
}

/// Depth-limited exhaustive search: fewest moves reaching a free interval of
/// at least `target`, or nullopt if none within `max_depth`. Iterative
/// deepening over brute_feasible; exponential, tiny instances only.
inline std::optional<int> exhaustive_min_moves(const Layout &start, int target, int max_depth) {
  std::map<std::vector<int>, int> best_depth;
  auto dfs = [&](auto &&self, const Layout &layout, int depth, int limit) -> bool {
    if (brute_max_free(layout) >= target) return true;
    if (depth == limit) return false;
    auto [it, inserted] = best_depth.emplace(layout.starts(), depth);
    if (!inserted) {
      if (it->second <= depth) return false;
      it->second = depth;
    }
    for (std::size_t i = 0; i < layout.module_count(); ++i) {
      for (int p : brute_feasible(layout, i)) {
        std::vector<int> starts = layout.starts();
        starts[i] = p;
        if (self(self, layout.with_starts(starts), depth + 1, limit)) return true;
      }
    }
    return false;
  };
  for (int limit = 0; limit <= max_depth; ++limit) {
    best_depth.clear();
    if (dfs(dfs, start, 0, limit)) return limit;
  }
  return std::nullopt;
}

/// Every configuration reachable through legal moves (tiny instances only).
inline std::set<std::vector<int>> reachable_configurations(const Layout &start) {
  std::set<std::vector<int>> seen{start.starts()};
  std::vector<Layout> stack{start};
  while (!stack.empty()) {
    Layout layout = stack.back();
    stack.pop_back();
    for (std::size_t i = 0; i < layout.module_count(); ++i) {
      for (int p : brute_feasible(layout, i)) {
        std::vector<int> starts = layout.starts();
        starts[i] = p;
        if (seen.insert(starts).second) stack.push_back(layout.with_starts(starts));
      }
    }
  }
  return seen;
}

inline Layout two_module_fixture() {
  return Layout::build(Device::build(10), {{homogeneous_module(1, 2), 1}, {homogeneous_module(2, 2), 5}});
}

}  // namespace defrag::testing
