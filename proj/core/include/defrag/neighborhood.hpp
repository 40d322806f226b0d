#pragma once

#include "defrag/layout.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace defrag {

/**
 * @brief Move neighborhood of one layout with constant-time evaluation
 *
 * Candidates follow the enumeration order shared by the greedy and tabu
 * strategies: modules by ascending id; a homogeneous module tries the left
 * end then the right end of every free interval large enough to hold it; any
 * other module tries every pattern-matching start inside a free interval.
 *
 * The largest free interval after a candidate move is derived from the free
 * interval list of the current layout without materializing the new layout.
 */
class Neighborhood {
 public:
  struct Candidate {
    std::size_t module_index = 0;
    int new_start = 0;
    /// Index into intervals() of the free interval receiving the module.
    std::size_t interval = 0;
  };

  explicit Neighborhood(const Layout &layout);

  const std::vector<FreeInterval> &intervals() const { return intervals_; }
  const std::vector<Candidate> &candidates() const { return candidates_; }
  int current_max_free() const { return currentMax_; }

  Move move(const Candidate &c) const { return {layout_->module(c.module_index).id, c.new_start}; }

  /// Size of the largest free interval once `c` is applied.
  int max_free_after(const Candidate &c) const;

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  const Layout *layout_;
  std::vector<FreeInterval> intervals_;
  std::vector<Candidate> candidates_;
  /// Free interval touching each module on its left / right, or kNone.
  std::vector<std::size_t> leftGap_;
  std::vector<std::size_t> rightGap_;
  /// Indices of the (up to) four largest free intervals, largest first.
  std::array<std::size_t, 4> largest_{kNone, kNone, kNone, kNone};
  int currentMax_ = 0;
};

}  // namespace defrag
