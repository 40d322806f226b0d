#include "defrag/makespan_sim.hpp"

#include "defrag/error.hpp"
#include "defrag/random.hpp"
#include "defrag/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace defrag {

std::vector<WorkloadItem> generate_workload(int count, double size_mean, double duration_mean, std::uint64_t seed,
                                            int max_size) {
  std::vector<WorkloadItem> items;
  if (count <= 0) return items;
  if (!(size_mean > 0) || !(duration_mean > 0) || max_size < 1) {
    throw DefragError(ErrorCode::InvalidArgument, "workload parameters must be positive");
  }
  Random rng(seed);
  items.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double raw_size = std::round(rng.normal(size_mean, size_mean / 4.0));
    const int size = static_cast<int>(std::clamp(raw_size, 1.0, static_cast<double>(max_size)));
    const double raw_duration = std::ceil(rng.exponential(duration_mean));
    const auto duration = static_cast<SimTime>(std::max(1.0, raw_duration));
    items.push_back({i + 1, std::string(static_cast<std::size_t>(size), kLogicTag), duration});
  }
  return items;
}

std::string_view to_string(Policy policy) {
  switch (policy) {
    case Policy::None: return "none";
    case Policy::Greedy: return "greedy";
    case Policy::Tabu: return "tabu";
  }
  return "unknown";
}

std::optional<Policy> parse_policy(std::string_view name) {
  if (name == "none") return Policy::None;
  if (name == "greedy") return Policy::Greedy;
  if (name == "tabu") return Policy::Tabu;
  return std::nullopt;
}

namespace {

struct Resident {
  std::size_t item = 0;
  SimTime finish = 0;
  SimTime run_begin = 0;
};

class Simulator {
 public:
  Simulator(const std::vector<WorkloadItem> &workload, const SimConfig &config)
      : workload_(workload), config_(config), layout_(Layout::empty(config.device)) {
    report_.timeline.resize(workload.size());
  }

  SimReport run() {
    for (std::size_t k = 0; k < workload_.size(); ++k) {
      const WorkloadItem &item = workload_[k];
      if (item.size() > config_.device.length()) {
        throw DefragError(ErrorCode::InvalidArgument, "module " + std::to_string(item.id) + " of size " +
                                                          std::to_string(item.size()) + " exceeds the device");
      }
      if (!fits_somewhere(item.pattern)) {
        throw DefragError(ErrorCode::InvalidArgument,
                          "module " + std::to_string(item.id) + " matches no position of the device");
      }
      admit(k);
    }
    while (!resident_.empty()) complete_until(std::numeric_limits<SimTime>::max());
    return std::move(report_);
  }

 private:
  bool fits_somewhere(const std::string &pattern) const {
    for (int p = 0; p + static_cast<int>(pattern.size()) <= config_.device.length(); ++p) {
      if (config_.device.matches(pattern, p)) return true;
    }
    return false;
  }

  std::optional<int> first_fit(const std::string &pattern) const {
    const int size = static_cast<int>(pattern.size());
    for (const auto &f : free_intervals(layout_)) {
      for (int p = f.start; p + size <= f.end(); ++p) {
        if (config_.device.matches(pattern, p)) return p;
      }
    }
    return std::nullopt;
  }

  /// Removes every resident module finishing at or before `t`, in finish order.
  void complete_until(SimTime t) {
    while (!resident_.empty()) {
      auto next = std::min_element(resident_.begin(), resident_.end(),
                                   [](const auto &a, const auto &b) { return a.second.finish < b.second.finish; });
      if (next->second.finish > t) return;
      ModuleTimeline &line = report_.timeline[next->second.item];
      line.runs.push_back({next->second.run_begin, next->second.finish});
      line.finish = next->second.finish;
      report_.makespan = std::max(report_.makespan, line.finish);
      layout_ = layout_.without_module(next->first);
      resident_.erase(next);
    }
  }

  std::optional<SimTime> next_completion() const {
    std::optional<SimTime> best;
    for (const auto &[id, r] : resident_) {
      if (!best || r.finish < *best) best = r.finish;
    }
    return best;
  }

  void defragment() {
    ++report_.defrag_invocations;
    const StrategyReport plan =
        config_.policy == Policy::Greedy ? greedy_defrag(layout_) : tabu_defrag(layout_);
    for (const Move &move : plan.moves_to_best()) {
      complete_until(now_);
      auto it = resident_.find(move.module_id);
      // The module may have finished while earlier relocations held the port.
      if (it == resident_.end()) continue;
      Resident &r = it->second;
      ModuleTimeline &line = report_.timeline[r.item];
      const int from = layout_.start_of(move.module_id);
      const int cost = workload_[r.item].size();
      layout_ = apply_move(layout_, move);
      if (now_ > r.run_begin) line.runs.push_back({r.run_begin, now_});
      line.relocations.push_back({now_, now_ + cost, from, move.new_start});
      r.finish += cost;
      r.run_begin = now_ + cost;
      now_ += cost;
      ++report_.relocations;
      report_.total_relocation_cost += cost;
    }
  }

  void admit(std::size_t k) {
    const WorkloadItem &item = workload_[k];
    complete_until(now_);
    const SimTime ready = now_;
    std::optional<int> slot = first_fit(item.pattern);
    while (!slot) {
      if (config_.policy != Policy::None) {
        defragment();
        complete_until(now_);
        slot = first_fit(item.pattern);
        if (slot) break;
      }
      const auto next = next_completion();
      if (!next) {
        throw DefragError(ErrorCode::InvalidArgument, "module " + std::to_string(item.id) + " can never be placed");
      }
      now_ = std::max(now_, *next);
      complete_until(now_);
      slot = first_fit(item.pattern);
    }

    ModuleTimeline &line = report_.timeline[k];
    line.id = item.id;
    line.size = item.size();
    line.slot = *slot;
    line.waited = now_ - ready;
    line.config_begin = now_;
    line.config_end = now_ + item.size();
    report_.total_wait += line.waited;

    layout_ = layout_.with_module(ModuleSpec{item.id, item.pattern}, *slot);
    resident_[item.id] = Resident{k, line.config_end + item.duration, line.config_end};
    now_ = line.config_end;
  }

  const std::vector<WorkloadItem> &workload_;
  const SimConfig &config_;
  Layout layout_;
  std::map<ModuleId, Resident> resident_;
  SimTime now_ = 0;
  SimReport report_;
};

}  // namespace

SimReport simulate_schedule(const std::vector<WorkloadItem> &workload, const SimConfig &config) {
  return Simulator(workload, config).run();
}

}  // namespace defrag
