#include "defrag/layout.hpp"

#include "defrag/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace defrag {

namespace {

std::string module_name(ModuleId id) { return "module " + std::to_string(id); }

}  // namespace

Layout Layout::build(Device device, std::vector<Placement> placements) {
  std::sort(placements.begin(), placements.end(),
            [](const Placement &a, const Placement &b) { return a.module.id < b.module.id; });
  auto modules = std::make_shared<std::vector<ModuleSpec>>();
  std::vector<int> starts;
  modules->reserve(placements.size());
  starts.reserve(placements.size());
  for (std::size_t i = 0; i < placements.size(); ++i) {
    if (i > 0 && placements[i].module.id == placements[i - 1].module.id) {
      throw DefragError(ErrorCode::DuplicateId, "duplicate " + module_name(placements[i].module.id));
    }
    modules->push_back(std::move(placements[i].module));
    starts.push_back(placements[i].start);
  }
  Layout layout(std::make_shared<const Device>(std::move(device)), std::move(modules), std::move(starts));
  layout.validate();
  return layout;
}

Layout Layout::empty(Device device) { return build(std::move(device), {}); }

void Layout::validate() const {
  const Device &dev = *device_;
  for (std::size_t i = 0; i < starts_.size(); ++i) {
    const ModuleSpec &spec = module(i);
    if (spec.pattern.empty()) {
      throw DefragError(ErrorCode::EmptyPattern, module_name(spec.id) + " has an empty pattern");
    }
    for (char tag : spec.pattern) {
      if (!is_valid_tag(tag) || tag == kSeparatorTag) {
        throw DefragError(ErrorCode::InvalidTag,
                          module_name(spec.id) + " has invalid pattern tag '" + std::string(1, tag) + "'");
      }
    }
    if (starts_[i] < 0 || starts_[i] + spec.size() > dev.length()) {
      throw DefragError(ErrorCode::OutOfBounds, module_name(spec.id) + " at " + std::to_string(starts_[i]) +
                                                    " exceeds device of length " + std::to_string(dev.length()));
    }
    if (!dev.matches(spec.pattern, starts_[i])) {
      throw DefragError(ErrorCode::PatternMismatch, module_name(spec.id) + " pattern '" + spec.pattern +
                                                        "' does not match device at " + std::to_string(starts_[i]));
    }
  }
  std::vector<std::size_t> order(starts_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return starts_[a] < starts_[b]; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    std::size_t prev = order[k - 1];
    std::size_t cur = order[k];
    if (starts_[prev] + module(prev).size() > starts_[cur]) {
      throw DefragError(ErrorCode::Overlap, module_name(module(prev).id) + " overlaps " + module_name(module(cur).id));
    }
  }
}

std::optional<std::size_t> Layout::index_of(ModuleId id) const {
  auto it = std::lower_bound(modules_->begin(), modules_->end(), id,
                             [](const ModuleSpec &m, ModuleId key) { return m.id < key; });
  if (it == modules_->end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - modules_->begin());
}

int Layout::start_of(ModuleId id) const {
  auto index = index_of(id);
  if (!index) throw DefragError(ErrorCode::UnknownId, "unknown " + module_name(id));
  return starts_[*index];
}

std::vector<int> Layout::occupancy() const {
  std::vector<int> owner(static_cast<std::size_t>(device_->length()), -1);
  for (std::size_t i = 0; i < starts_.size(); ++i) {
    std::fill_n(owner.begin() + starts_[i], module(i).size(), static_cast<int>(i));
  }
  return owner;
}

int Layout::occupied_slots() const {
  int total = 0;
  for (const auto &m : *modules_) total += m.size();
  return total;
}

std::vector<Placement> Layout::placements() const {
  std::vector<Placement> result;
  result.reserve(starts_.size());
  for (std::size_t i = 0; i < starts_.size(); ++i) result.push_back({module(i), starts_[i]});
  return result;
}

Layout Layout::with_starts(std::vector<int> starts) const {
  if (starts.size() != starts_.size()) {
    throw DefragError(ErrorCode::InvalidArgument, "start vector does not match module count");
  }
  Layout layout(device_, modules_, std::move(starts));
  layout.validate();
  return layout;
}

Layout Layout::with_module(ModuleSpec module, int start) const {
  auto list = placements();
  list.push_back({std::move(module), start});
  return build(*device_, std::move(list));
}

Layout Layout::without_module(ModuleId id) const {
  auto index = index_of(id);
  if (!index) throw DefragError(ErrorCode::UnknownId, "unknown " + module_name(id));
  auto list = placements();
  list.erase(list.begin() + static_cast<std::ptrdiff_t>(*index));
  return build(*device_, std::move(list));
}

bool operator==(const Layout &a, const Layout &b) {
  return a.starts_ == b.starts_ && (a.modules_ == b.modules_ || *a.modules_ == *b.modules_) &&
         (a.device_ == b.device_ || *a.device_ == *b.device_);
}

std::vector<FreeInterval> free_intervals(const Layout &layout) {
  std::vector<std::pair<int, int>> occupied;
  occupied.reserve(layout.module_count());
  for (std::size_t i = 0; i < layout.module_count(); ++i) {
    occupied.emplace_back(layout.start(i), layout.start(i) + layout.module(i).size());
  }
  std::sort(occupied.begin(), occupied.end());
  std::vector<FreeInterval> result;
  int cursor = 0;
  for (auto [begin, end] : occupied) {
    if (begin > cursor) result.push_back({cursor, begin - cursor});
    cursor = end;
  }
  if (cursor < layout.device().length()) result.push_back({cursor, layout.device().length() - cursor});
  return result;
}

int max_free_interval(const Layout &layout) {
  int best = 0;
  for (const auto &f : free_intervals(layout)) best = std::max(best, f.size);
  return best;
}

double fitness(const Layout &layout) {
  int free = layout.free_slots();
  if (free == 0) return 1.0;
  return static_cast<double>(max_free_interval(layout)) / free;
}

double density(const Layout &layout) {
  return static_cast<double>(layout.occupied_slots()) / layout.device().length();
}

std::vector<int> feasible_positions(const Layout &layout, ModuleId id) {
  auto index = layout.index_of(id);
  if (!index) throw DefragError(ErrorCode::UnknownId, "unknown " + module_name(id));
  const ModuleSpec &spec = layout.module(*index);
  std::vector<int> result;
  for (const auto &f : free_intervals(layout)) {
    for (int p = f.start; p + spec.size() <= f.end(); ++p) {
      if (layout.device().matches(spec.pattern, p)) result.push_back(p);
    }
  }
  return result;
}

Layout apply_move(const Layout &layout, const Move &move) {
  auto index = layout.index_of(move.module_id);
  if (!index) throw DefragError(ErrorCode::UnknownId, "unknown " + module_name(move.module_id));
  const ModuleSpec &spec = layout.module(*index);
  const int size = spec.size();
  const int begin = move.new_start;
  const int end = begin + size;
  if (begin < 0 || end > layout.device().length()) {
    throw DefragError(ErrorCode::OutOfBounds, "target of " + module_name(spec.id) + " lies outside the device");
  }
  const int old_begin = layout.start(*index);
  if (begin < old_begin + size && old_begin < end) {
    throw DefragError(ErrorCode::SelfOverlap,
                      "target of " + module_name(spec.id) + " overlaps its own current interval");
  }
  for (std::size_t j = 0; j < layout.module_count(); ++j) {
    if (j == *index) continue;
    const int other_begin = layout.start(j);
    if (begin < other_begin + layout.module(j).size() && other_begin < end) {
      throw DefragError(ErrorCode::Overlap,
                        "target of " + module_name(spec.id) + " overlaps " + module_name(layout.module(j).id));
    }
  }
  if (!layout.device().matches(spec.pattern, begin)) {
    throw DefragError(ErrorCode::PatternMismatch,
                      module_name(spec.id) + " pattern does not match device at " + std::to_string(begin));
  }
  std::vector<int> starts = layout.starts();
  starts[*index] = begin;
  return layout.with_starts(std::move(starts));
}

}  // namespace defrag
