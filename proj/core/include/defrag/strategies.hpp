#pragma once

#include "defrag/layout.hpp"

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace defrag {

/**
 * @brief Outcome of one defragmentation run
 *
 * `moves` is the full sequence applied to the input layout. Replaying its
 * first `best_prefix` entries yields `best_layout`.
 */
struct StrategyReport {
  std::vector<Move> moves;
  std::size_t best_prefix = 0;
  Layout best_layout;
  int best_max_free = 0;
  double best_fitness = 1.0;
  int iterations_used = 0;

  std::vector<Move> moves_to_best() const {
    return {moves.begin(), moves.begin() + static_cast<std::ptrdiff_t>(best_prefix)};
  }
};

/// Candidate relocations in the fixed order used by greedy and tabu search.
std::vector<Move> enumerate_moves(const Layout &layout);

/// True iff density <= 1/2 - max module size / (2 * length), evaluated
/// exactly in integers. Under this bound left_right_shift always connects the
/// free space.
bool satisfies_moderate_density(const Layout &layout);

/**
 * @brief Two-pass shifting for homogeneous layouts of moderate density
 *
 * Pass one visits modules from left to right and jumps each to the leftmost
 * free interval that fits and lies strictly to its left. Pass two visits them
 * from right to left and jumps each to the right end of the rightmost fitting
 * free interval strictly to its right. The result has a single free interval
 * at the left end of the array and uses at most 2n moves.
 *
 * Throws DefragError(PreconditionViolated) when a module is heterogeneous,
 * the device is not homogeneous, or the density bound does not hold.
 */
StrategyReport left_right_shift(const Layout &layout);

/// Applies the best single move while it strictly enlarges the largest free
/// interval. Ties go to the first move in enumeration order.
StrategyReport greedy_defrag(const Layout &layout);

/**
 * @brief Tabu search over single relocations
 *
 * Every iteration applies the best move whose resulting configuration is not
 * in the tabu list, even if fitness drops, and appends that configuration to
 * a FIFO list holding floor(n/2) entries (at least one). Stops at fitness 1,
 * after `max_iterations` (default 2n^2), or when every neighbor is tabu. The
 * best configuration seen is reported.
 */
StrategyReport tabu_defrag(const Layout &layout, std::optional<int> max_iterations = std::nullopt);

enum class Strategy { LeftRightShift, Greedy, Tabu };

std::string_view to_string(Strategy strategy);
std::optional<Strategy> parse_strategy(std::string_view name);

StrategyReport run_strategy(Strategy strategy, const Layout &layout);

}  // namespace defrag
