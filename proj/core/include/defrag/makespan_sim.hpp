#pragma once

#include "defrag/layout.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace defrag {

using SimTime = std::int64_t;

struct WorkloadItem {
  ModuleId id = 0;
  std::string pattern;
  /// Execution time required once configured.
  SimTime duration = 1;

  int size() const { return static_cast<int>(pattern.size()); }
};

/**
 * @brief Random request sequence
 *
 * Sizes are normal(size_mean, size_mean / 4), rounded and clipped to
 * [1, max_size]; durations are exponential with the given mean, rounded up
 * and at least 1. Ids run from 1. Deterministic per seed.
 */
std::vector<WorkloadItem> generate_workload(int count, double size_mean, double duration_mean, std::uint64_t seed,
                                            int max_size = 200);

enum class Policy { None, Greedy, Tabu };

std::string_view to_string(Policy policy);
std::optional<Policy> parse_policy(std::string_view name);

struct SimConfig {
  Device device;
  Policy policy = Policy::None;
  /// Recorded in reports; the simulation itself is deterministic.
  std::uint64_t seed = 0;
};

struct RunInterval {
  SimTime begin = 0;
  SimTime end = 0;
};

struct Relocation {
  SimTime begin = 0;
  SimTime end = 0;
  int from = 0;
  int to = 0;
};

struct ModuleTimeline {
  ModuleId id = 0;
  int size = 0;
  int slot = 0;  ///< Slot chosen at admission.
  SimTime config_begin = 0;
  SimTime config_end = 0;
  SimTime finish = 0;
  /// Time spent at the head of the queue waiting for space.
  SimTime waited = 0;
  std::vector<RunInterval> runs;
  std::vector<Relocation> relocations;
};

struct SimReport {
  SimTime makespan = 0;
  std::vector<ModuleTimeline> timeline;  ///< In workload order.
  SimTime total_wait = 0;
  int defrag_invocations = 0;
  int relocations = 0;
  SimTime total_relocation_cost = 0;
};

/**
 * @brief Discrete-event simulation of a request sequence
 *
 * All requests are queued at time 0 and admitted strictly in order at the
 * leftmost feasible start. A single reconfiguration port writes one column
 * per time unit: configuring a module of size m holds the port for m units,
 * after which the module runs for its duration and then frees its slots.
 * When the head request does not fit, the greedy and tabu policies run the
 * strategy and replay its moves to the best layout found; each relocation
 * holds the port for the module's size and pauses that module for the same
 * time. The request then waits for the next completion and retries (with
 * another defragmentation attempt under the non-trivial policies).
 *
 * Throws DefragError(InvalidArgument) for a request larger than the device.
 */
SimReport simulate_schedule(const std::vector<WorkloadItem> &workload, const SimConfig &config);

}  // namespace defrag
