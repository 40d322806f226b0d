#include "experiments.hpp"

#include "defrag/instance_gen.hpp"
#include "defrag/random.hpp"
#include "defrag/strategies.hpp"

#include <atomic>
#include <cmath>
#include <ostream>
#include <thread>

namespace defrag::tools {

namespace {

/// Calls task(i) for every i in [0, count) on `threads` workers.
template <class Task>
void parallel_for(std::size_t count, unsigned threads, Task task) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) task(i);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto &th : pool) th.join();
}

struct RunSample {
  double density = 0;
  int max_free_before = 0;
  int intervals_before = 0;
  int max_free_greedy = 0;
  int intervals_greedy = 0;
  int max_free_tabu = 0;
  int intervals_tabu = 0;
};

}  // namespace

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

double SweepRow::greedy_improvement() const {
  return avg_max_free_before > 0 ? avg_max_free_greedy / avg_max_free_before - 1.0 : 0.0;
}

double SweepRow::tabu_improvement() const {
  return avg_max_free_before > 0 ? avg_max_free_tabu / avg_max_free_before - 1.0 : 0.0;
}

std::vector<double> density_steps(double from, double to, double step) {
  std::vector<double> out;
  if (step <= 0 || to < from) return out;
  const auto count = static_cast<int>(std::floor((to - from) / step + 1e-9)) + 1;
  for (int k = 0; k < count; ++k) out.push_back(from + k * step);
  return out;
}

std::vector<SweepRow> run_sweep(const SweepConfig &config) {
  const auto steps = density_steps(config.density_from, config.density_to, config.step);
  const auto runs = static_cast<std::size_t>(std::max(0, config.runs));
  std::vector<RunSample> samples(steps.size() * runs);
  parallel_for(samples.size(), resolve_threads(config.threads), [&](std::size_t i) {
    const std::size_t step = i / runs;
    const GenParams params{config.device, steps[step], mix_seed(config.seed, i)};
    const Layout layout = random_instance(params).layout;
    const StrategyReport greedy = greedy_defrag(layout);
    const StrategyReport tabu = tabu_defrag(layout);
    RunSample &s = samples[i];
    s.density = density(layout);
    s.max_free_before = max_free_interval(layout);
    s.intervals_before = static_cast<int>(free_intervals(layout).size());
    s.max_free_greedy = greedy.best_max_free;
    s.intervals_greedy = static_cast<int>(free_intervals(greedy.best_layout).size());
    s.max_free_tabu = tabu.best_max_free;
    s.intervals_tabu = static_cast<int>(free_intervals(tabu.best_layout).size());
  });

  std::vector<SweepRow> rows;
  for (std::size_t step = 0; step < steps.size(); ++step) {
    SweepRow row;
    row.target_density = steps[step];
    row.runs = static_cast<int>(runs);
    for (std::size_t r = 0; r < runs; ++r) {
      const RunSample &s = samples[step * runs + r];
      row.avg_density += s.density;
      row.avg_max_free_before += s.max_free_before;
      row.avg_intervals_before += s.intervals_before;
      row.avg_max_free_greedy += s.max_free_greedy;
      row.avg_intervals_greedy += s.intervals_greedy;
      row.avg_max_free_tabu += s.max_free_tabu;
      row.avg_intervals_tabu += s.intervals_tabu;
    }
    if (runs > 0) {
      const double n = static_cast<double>(runs);
      for (double *v : {&row.avg_density, &row.avg_max_free_before, &row.avg_intervals_before,
                        &row.avg_max_free_greedy, &row.avg_intervals_greedy, &row.avg_max_free_tabu,
                        &row.avg_intervals_tabu}) {
        *v /= n;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
  out << "target_density,runs,avg_density,avg_max_free_before,avg_intervals_before,avg_max_free_greedy,"
         "avg_intervals_greedy,avg_max_free_tabu,avg_intervals_tabu,greedy_improvement,tabu_improvement\n";
  for (const SweepRow &r : rows) {
    out << r.target_density << ',' << r.runs << ',' << r.avg_density << ',' << r.avg_max_free_before << ','
        << r.avg_intervals_before << ',' << r.avg_max_free_greedy << ',' << r.avg_intervals_greedy << ','
        << r.avg_max_free_tabu << ',' << r.avg_intervals_tabu << ',' << r.greedy_improvement() << ','
        << r.tabu_improvement() << '\n';
  }
}

std::vector<MakespanRow> run_makespan(const MakespanConfig &config) {
  const auto runs = static_cast<std::size_t>(std::max(0, config.runs));
  const std::size_t per_run = config.policies.size();
  std::vector<MakespanRow> rows(runs * per_run);
  const Device device = Device::build(config.length);
  parallel_for(rows.size(), resolve_threads(config.threads), [&](std::size_t i) {
    const std::uint64_t seed = config.seed + i / per_run;
    const Policy policy = config.policies[i % per_run];
    std::vector<WorkloadItem> workload = generate_workload(config.count, config.size_mean, config.duration_mean, seed);
    MakespanRow &row = rows[i];
    // Requests wider than the device can never be served; they are dropped and counted.
    std::erase_if(workload, [&](const WorkloadItem &w) {
      if (w.size() <= config.length) return false;
      ++row.rejected_count;
      return true;
    });
    const SimReport report = simulate_schedule(workload, SimConfig{device, policy, seed});
    row.seed = seed;
    row.policy = policy;
    row.size_mean = config.size_mean;
    row.duration_mean = config.duration_mean;
    row.makespan = report.makespan;
    row.defrag_invocations = report.defrag_invocations;
    row.relocations = report.relocations;
    row.total_relocation_cost = report.total_relocation_cost;
  });
  return rows;
}

void write_makespan_csv(std::ostream &out, const std::vector<MakespanRow> &rows) {
  out << "seed,policy,size_mean,duration_mean,makespan,defrag_invocations,relocations,total_relocation_cost,"
         "rejected_count\n";
  for (const MakespanRow &r : rows) {
    out << r.seed << ',' << to_string(r.policy) << ',' << r.size_mean << ',' << r.duration_mean << ','
        << r.makespan << ',' << r.defrag_invocations << ',' << r.relocations << ',' << r.total_relocation_cost
        << ',' << r.rejected_count << '\n';
  }
}

}  // namespace defrag::tools
