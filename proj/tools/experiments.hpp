#pragma once

// Batch experiment runners behind the `sweep` and `makespan` subcommands.
// Runs are independent and fan out over a thread pool; results are always
// returned in a fixed order, so output does not depend on scheduling.

#include "defrag/device.hpp"
#include "defrag/makespan_sim.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace defrag::tools {

/// 0 means one worker per hardware thread.
unsigned resolve_threads(unsigned requested);

struct SweepConfig {
  Device device;
  double density_from = 0.3;
  double density_to = 0.9;
  double step = 0.05;
  int runs = 100;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct SweepRow {
  double target_density = 0;
  int runs = 0;
  double avg_density = 0;
  double avg_max_free_before = 0;
  double avg_intervals_before = 0;
  double avg_max_free_greedy = 0;
  double avg_intervals_greedy = 0;
  double avg_max_free_tabu = 0;
  double avg_intervals_tabu = 0;

  double greedy_improvement() const;
  double tabu_improvement() const;
};

/// Density steps from..to inclusive; the count is rounded so float drift never drops the last step.
std::vector<double> density_steps(double from, double to, double step);

std::vector<SweepRow> run_sweep(const SweepConfig &config);
void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows);

struct MakespanConfig {
  int length = 200;
  int count = 200;
  double size_mean = 50;
  double duration_mean = 1000;
  int runs = 30;
  std::vector<Policy> policies{Policy::None, Policy::Greedy, Policy::Tabu};
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct MakespanRow {
  std::uint64_t seed = 0;
  Policy policy = Policy::None;
  double size_mean = 0;
  double duration_mean = 0;
  SimTime makespan = 0;
  int defrag_invocations = 0;
  int relocations = 0;
  SimTime total_relocation_cost = 0;
  int rejected_count = 0;
};

/// Run r uses workload seed `seed + r` for every policy. Rows are ordered by run, then policy.
std::vector<MakespanRow> run_makespan(const MakespanConfig &config);
void write_makespan_csv(std::ostream &out, const std::vector<MakespanRow> &rows);

}  // namespace defrag::tools
