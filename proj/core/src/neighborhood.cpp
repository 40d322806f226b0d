#include "defrag/neighborhood.hpp"

#include <algorithm>
#include <unordered_map>

namespace defrag {

Neighborhood::Neighborhood(const Layout &layout)
    : layout_(&layout),
      intervals_(free_intervals(layout)),
      leftGap_(layout.module_count(), kNone),
      rightGap_(layout.module_count(), kNone) {
  const Device &device = layout.device();
  std::unordered_map<int, std::size_t> by_start;
  std::unordered_map<int, std::size_t> by_end;
  for (std::size_t j = 0; j < intervals_.size(); ++j) {
    by_start.emplace(intervals_[j].start, j);
    by_end.emplace(intervals_[j].end(), j);
    currentMax_ = std::max(currentMax_, intervals_[j].size);
  }
  for (std::size_t i = 0; i < layout.module_count(); ++i) {
    if (auto it = by_end.find(layout.start(i)); it != by_end.end()) leftGap_[i] = it->second;
    if (auto it = by_start.find(layout.start(i) + layout.module(i).size()); it != by_start.end()) {
      rightGap_[i] = it->second;
    }
  }

  std::vector<std::size_t> order(intervals_.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  const std::size_t keep = std::min<std::size_t>(largest_.size(), order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t a, std::size_t b) { return intervals_[a].size > intervals_[b].size; });
  std::copy_n(order.begin(), keep, largest_.begin());

  for (std::size_t i = 0; i < layout.module_count(); ++i) {
    const ModuleSpec &spec = layout.module(i);
    const int size = spec.size();
    const bool homogeneous = spec.is_homogeneous();
    for (std::size_t j = 0; j < intervals_.size(); ++j) {
      const FreeInterval &f = intervals_[j];
      if (f.size < size) continue;
      if (homogeneous) {
        // Leftmost and rightmost matching start; on a homogeneous device these
        // are the two ends of the interval. Logic slots cannot cover a
        // heterogeneity, so on other devices the ends may move inward.
        int lo = f.start;
        while (lo + size <= f.end() && !device.matches(spec.pattern, lo)) ++lo;
        if (lo + size > f.end()) continue;
        int hi = f.end() - size;
        while (!device.matches(spec.pattern, hi)) --hi;
        candidates_.push_back({i, lo, j});
        if (hi != lo) candidates_.push_back({i, hi, j});
      } else {
        for (int p = f.start; p + size <= f.end(); ++p) {
          if (device.matches(spec.pattern, p)) candidates_.push_back({i, p, j});
        }
      }
    }
  }
}

int Neighborhood::max_free_after(const Candidate &c) const {
  const int size = layout_->module(c.module_index).size();
  const int old_start = layout_->start(c.module_index);
  const std::size_t left = leftGap_[c.module_index];
  const std::size_t right = rightGap_[c.module_index];
  const int merged_start = left == kNone ? old_start : intervals_[left].start;
  const int merged_end = right == kNone ? old_start + size : intervals_[right].end();

  int best = 0;
  for (std::size_t idx : largest_) {
    if (idx == kNone) break;
    if (idx != left && idx != right && idx != c.interval) {
      best = intervals_[idx].size;
      break;
    }
  }
  const int target_end = c.new_start + size;
  if (c.interval == left || c.interval == right) {
    best = std::max({best, c.new_start - merged_start, merged_end - target_end});
  } else {
    const FreeInterval &f = intervals_[c.interval];
    best = std::max({best, merged_end - merged_start, c.new_start - f.start, f.end() - target_end});
  }
  return best;
}

}  // namespace defrag
