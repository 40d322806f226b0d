#include "defrag/strategies.hpp"

#include "defrag/error.hpp"
#include "defrag/neighborhood.hpp"
#include "defrag/random.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

namespace defrag {

namespace {

StrategyReport unchanged_report(const Layout &layout) {
  return StrategyReport{{}, 0, layout, max_free_interval(layout), fitness(layout), 0};
}

void finish_report(StrategyReport &report) {
  report.best_max_free = max_free_interval(report.best_layout);
  report.best_fitness = fitness(report.best_layout);
}

std::vector<std::size_t> indices_by_start(const Layout &layout, bool ascending) {
  std::vector<std::size_t> order(layout.module_count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ascending ? layout.start(a) < layout.start(b) : layout.start(a) > layout.start(b);
  });
  return order;
}

bool single_interval_at_left(const Layout &layout) {
  auto intervals = free_intervals(layout);
  return intervals.empty() || (intervals.size() == 1 && intervals.front().start == 0);
}

/// Zobrist-style configuration hash: xor of one key per (module, start).
std::uint64_t slot_key(std::size_t module_index, int start) {
  return mix_seed(0x5eedf00dULL + module_index, static_cast<std::uint64_t>(start));
}

std::uint64_t configuration_hash(const std::vector<int> &starts) {
  std::uint64_t h = 0;
  for (std::size_t i = 0; i < starts.size(); ++i) h ^= slot_key(i, starts[i]);
  return h;
}

struct TabuEntry {
  std::uint64_t hash;
  std::vector<int> starts;
};

class TabuList {
 public:
  explicit TabuList(std::size_t capacity) : capacity_(capacity) {}

  void push(std::uint64_t hash, std::vector<int> starts) {
    entries_.push_back({hash, std::move(starts)});
    if (entries_.size() > capacity_) entries_.pop_front();
  }

  /// Whether `base` with module `index` moved to `start` is stored.
  bool contains(std::uint64_t hash, const std::vector<int> &base, std::size_t index, int start) const {
    for (const auto &e : entries_) {
      if (e.hash != hash) continue;
      bool same = true;
      for (std::size_t i = 0; i < base.size() && same; ++i) same = e.starts[i] == (i == index ? start : base[i]);
      if (same) return true;
    }
    return false;
  }

 private:
  std::size_t capacity_;
  std::deque<TabuEntry> entries_;
};

}  // namespace

std::vector<Move> enumerate_moves(const Layout &layout) {
  Neighborhood neighborhood(layout);
  std::vector<Move> moves;
  moves.reserve(neighborhood.candidates().size());
  for (const auto &c : neighborhood.candidates()) moves.push_back(neighborhood.move(c));
  return moves;
}

bool satisfies_moderate_density(const Layout &layout) {
  long long occupied = 0;
  int largest = 0;
  for (const auto &m : layout.modules()) {
    occupied += m.size();
    largest = std::max(largest, m.size());
  }
  // occupied / l <= 1/2 - largest / (2 l)  <=>  2 * occupied <= l - largest
  return 2 * occupied <= static_cast<long long>(layout.device().length()) - largest;
}

StrategyReport left_right_shift(const Layout &layout) {
  if (!layout.device().is_homogeneous()) {
    throw DefragError(ErrorCode::PreconditionViolated, "left-right shift requires a homogeneous device");
  }
  for (const auto &m : layout.modules()) {
    if (!m.is_homogeneous()) {
      throw DefragError(ErrorCode::PreconditionViolated,
                        "left-right shift requires homogeneous modules; module " + std::to_string(m.id) + " is not");
    }
  }
  if (!satisfies_moderate_density(layout)) {
    int largest = 0;
    for (const auto &m : layout.modules()) largest = std::max(largest, m.size());
    const double bound = 0.5 - 0.5 * largest / layout.device().length();
    throw DefragError(ErrorCode::PreconditionViolated,
                      "density " + std::to_string(density(layout)) + " exceeds bound " + std::to_string(bound) +
                          " (1/2 - " + std::to_string(largest) + "/(2*" +
                          std::to_string(layout.device().length()) + "))");
  }

  StrategyReport report = unchanged_report(layout);
  if (single_interval_at_left(layout)) return report;

  Layout current = layout;
  auto apply = [&](std::size_t index, int start) {
    Move move{current.module(index).id, start};
    current = apply_move(current, move);
    report.moves.push_back(move);
  };

  for (std::size_t index : indices_by_start(current, true)) {
    const int size = current.module(index).size();
    const int start = current.start(index);
    for (const auto &f : free_intervals(current)) {
      if (f.end() > start) break;
      if (f.size >= size) {
        apply(index, f.start);
        break;
      }
    }
  }
  ++report.iterations_used;

  if (!single_interval_at_left(current)) {
    for (std::size_t index : indices_by_start(current, false)) {
      const int size = current.module(index).size();
      const int end = current.start(index) + size;
      auto intervals = free_intervals(current);
      for (auto it = intervals.rbegin(); it != intervals.rend(); ++it) {
        if (it->start < end) break;
        if (it->size >= size) {
          apply(index, it->end() - size);
          break;
        }
      }
    }
    ++report.iterations_used;
  }

  report.best_layout = current;
  report.best_prefix = report.moves.size();
  finish_report(report);
  return report;
}

StrategyReport greedy_defrag(const Layout &layout) {
  StrategyReport report = unchanged_report(layout);
  Layout current = layout;
  while (true) {
    Neighborhood neighborhood(current);
    ++report.iterations_used;
    const Neighborhood::Candidate *best = nullptr;
    int best_free = neighborhood.current_max_free();
    for (const auto &c : neighborhood.candidates()) {
      const int after = neighborhood.max_free_after(c);
      if (after > best_free) {
        best_free = after;
        best = &c;
      }
    }
    if (best == nullptr) break;
    Move move = neighborhood.move(*best);
    current = apply_move(current, move);
    report.moves.push_back(move);
  }
  report.best_layout = current;
  report.best_prefix = report.moves.size();
  finish_report(report);
  return report;
}

StrategyReport tabu_defrag(const Layout &layout, std::optional<int> max_iterations) {
  StrategyReport report = unchanged_report(layout);
  const int n = static_cast<int>(layout.module_count());
  const int total_free = layout.free_slots();
  if (n == 0 || report.best_max_free >= total_free) return report;

  const int limit = max_iterations.value_or(2 * n * n);
  TabuList tabu(static_cast<std::size_t>(std::max(1, n / 2)));
  Layout current = layout;
  std::uint64_t hash = configuration_hash(current.starts());

  while (report.iterations_used < limit && report.best_max_free < total_free) {
    Neighborhood neighborhood(current);
    const Neighborhood::Candidate *chosen = nullptr;
    std::uint64_t chosen_hash = 0;
    int chosen_free = -1;
    for (const auto &c : neighborhood.candidates()) {
      const int after = neighborhood.max_free_after(c);
      if (after <= chosen_free) continue;
      const std::uint64_t h =
          hash ^ slot_key(c.module_index, current.start(c.module_index)) ^ slot_key(c.module_index, c.new_start);
      if (tabu.contains(h, current.starts(), c.module_index, c.new_start)) continue;
      chosen = &c;
      chosen_hash = h;
      chosen_free = after;
    }
    if (chosen == nullptr) break;

    Move move = neighborhood.move(*chosen);
    current = apply_move(current, move);
    hash = chosen_hash;
    report.moves.push_back(move);
    tabu.push(hash, current.starts());
    ++report.iterations_used;
    if (chosen_free > report.best_max_free) {
      report.best_max_free = chosen_free;
      report.best_layout = current;
      report.best_prefix = report.moves.size();
    }
  }
  finish_report(report);
  return report;
}

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::LeftRightShift: return "lrs";
    case Strategy::Greedy: return "greedy";
    case Strategy::Tabu: return "tabu";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  if (name == "lrs") return Strategy::LeftRightShift;
  if (name == "greedy") return Strategy::Greedy;
  if (name == "tabu") return Strategy::Tabu;
  return std::nullopt;
}

StrategyReport run_strategy(Strategy strategy, const Layout &layout) {
  switch (strategy) {
    case Strategy::LeftRightShift: return left_right_shift(layout);
    case Strategy::Greedy: return greedy_defrag(layout);
    case Strategy::Tabu: return tabu_defrag(layout);
  }
  throw DefragError(ErrorCode::InvalidArgument, "unknown strategy");
}

}  // namespace defrag
