#include "cli.hpp"

#include "experiments.hpp"

#include "defrag/error.hpp"
#include "defrag/instance_gen.hpp"
#include "defrag/instance_io.hpp"
#include "defrag/oracle.hpp"
#include "defrag/strategies.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>

namespace defrag::tools {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::map<std::string, std::function<Device()>> &device_presets() {
  static const std::map<std::string, std::function<Device()>> presets{
      {"het94", heterogeneous_94},
      {"homogeneous94", homogeneous_94},
  };
  return presets;
}

Device preset_device(const std::string &name) {
  auto it = device_presets().find(name);
  if (it == device_presets().end()) throw UsageError("unknown device preset '" + name + "'");
  return it->second();
}

/// Writes to the file at `path`, or to `fallback` when the path is empty.
void emit(const std::string &path, std::ostream &fallback, const std::function<void(std::ostream &)> &body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write '" + path + "'");
  body(file);
}

void print_metrics(std::ostream &out, const std::string &prefix, const Layout &layout) {
  out << prefix << "_max_free " << max_free_interval(layout) << '\n';
  out << prefix << "_free_intervals " << free_intervals(layout).size() << '\n';
  out << prefix << "_fitness " << fitness(layout) << '\n';
}

struct GenOptions {
  std::string out_path;
  // random / flatten
  std::string preset;
  int length = 0;
  std::string types;
  std::vector<std::string> rows;
  double density = 0.5;
  std::uint64_t seed = 1;
  // lowerbound
  int n = 0;
  // 3partition / inapprox
  std::vector<int> elements;
  int bound = 0;
  int r = 0;
};

struct Options {
  GenOptions gen;
  std::string in_path;
  std::string out_path;
  std::string strategy;
  std::optional<int> target;
  std::int64_t budget = kDefaultOracleBudget;
  bool interchangeable = false;
  SweepConfig sweep{homogeneous_94()};
  std::string sweep_device = "het94";
  MakespanConfig makespan;
  std::string policy = "all";
  unsigned threads = 0;
};

void run_gen_random(const GenOptions &g, std::ostream &out) {
  Device device = !g.preset.empty() ? preset_device(g.preset)
                  : !g.types.empty()  ? Device(g.types)
                                      : Device::build(g.length);
  if (!g.types.empty() && g.length != 0 && g.length != device.length()) {
    throw UsageError("--length disagrees with the --types string");
  }
  if (g.preset.empty() && g.types.empty() && g.length <= 0) throw UsageError("need --device, --length or --types");
  GeneratedInstance gen = random_instance({device, g.density, g.seed});
  emit(g.out_path, out, [&](std::ostream &o) {
    write_instance(o, gen.layout,
                   {"random instance, target density " + std::to_string(g.density) + ", seed " +
                    std::to_string(g.seed) + (gen.reached_target ? "" : ", target not reached")});
  });
}

void run_gen_flatten(const GenOptions &g, std::ostream &out) {
  Device device = flatten_two_dimensional(g.rows);
  Layout layout = g.density > 0 ? random_instance({device, g.density, g.seed}).layout : Layout::empty(device);
  emit(g.out_path, out, [&](std::ostream &o) {
    write_instance(o, layout, {"flattened " + std::to_string(g.rows.size()) + "-row device"});
  });
}

int run_defrag(const Options &o, std::ostream &out) {
  auto strategy = parse_strategy(o.strategy);
  if (!strategy) throw UsageError("unknown strategy '" + o.strategy + "'");
  const Layout layout = read_instance_file(o.in_path);
  const StrategyReport report = run_strategy(*strategy, layout);
  out << "strategy " << to_string(*strategy) << '\n';
  out << "modules " << layout.module_count() << '\n';
  out << "density " << density(layout) << '\n';
  print_metrics(out, "before", layout);
  print_metrics(out, "best", report.best_layout);
  out << "moves " << report.moves.size() << '\n';
  out << "moves_to_best " << report.best_prefix << '\n';
  out << "iterations " << report.iterations_used << '\n';
  write_moves(out, report.moves);
  if (!o.out_path.empty()) {
    emit(o.out_path, out, [&](std::ostream &f) {
      write_instance(f, report.best_layout, {"best layout from " + std::string(to_string(*strategy))});
    });
  }
  return kExitOk;
}

int run_oracle(const Options &o, std::ostream &out) {
  const Layout layout = read_instance_file(o.in_path);
  OracleOptions options;
  options.budget = o.budget;
  options.interchangeable = o.interchangeable;
  if (o.target) {
    const MinMovesResult r = min_moves_to_size(layout, *o.target, options);
    out << "target " << *o.target << '\n';
    out << "min_moves " << (r.moves ? std::to_string(*r.moves) : "unreachable") << '\n';
    out << "states_explored " << r.states_explored << '\n';
    out << "truncated " << (r.truncated ? "yes" : "no") << '\n';
  } else {
    const OracleResult r = bfs_optimum(layout, options);
    out << "optimum_max_free " << r.optimum_max_free << '\n';
    out << "min_moves_to_optimum " << r.min_moves_to_optimum << '\n';
    out << "states_explored " << r.states_explored << '\n';
    out << "truncated " << (r.truncated ? "yes" : "no") << '\n';
  }
  return kExitOk;
}

int run_sweep_command(Options o, std::ostream &out) {
  o.sweep.device = preset_device(o.sweep_device);
  o.sweep.threads = o.threads;
  if (o.sweep.step <= 0) throw UsageError("--step must be positive");
  const auto rows = run_sweep(o.sweep);
  emit(o.out_path, out, [&](std::ostream &f) { write_sweep_csv(f, rows); });
  return kExitOk;
}

int run_makespan_command(Options o, std::ostream &out) {
  if (o.policy == "all") {
    o.makespan.policies = {Policy::None, Policy::Greedy, Policy::Tabu};
  } else if (auto p = parse_policy(o.policy)) {
    o.makespan.policies = {*p};
  } else {
    throw UsageError("unknown policy '" + o.policy + "'");
  }
  o.makespan.threads = o.threads;
  const auto rows = run_makespan(o.makespan);
  emit(o.out_path, out, [&](std::ostream &f) { write_makespan_csv(f, rows); });
  return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Defragmentation of one-dimensional reconfigurable layouts", "defrag"};
  app.require_subcommand(1);
  Options o;
  GenOptions &g = o.gen;

  auto *gen = app.add_subcommand("gen", "Generate an instance file");
  gen->require_subcommand(1);
  auto *gen_random = gen->add_subcommand("random", "Random layout at a target density");
  auto *preset_opt = gen_random->add_option("--device", g.preset, "Device preset")
                         ->check(CLI::IsMember({"het94", "homogeneous94"}));
  gen_random->add_option("--length", g.length, "Homogeneous device length")->excludes(preset_opt);
  gen_random->add_option("--types", g.types, "Slot type string, e.g. llmll")->excludes(preset_opt);
  gen_random->add_option("--density", g.density, "Target density")->check(CLI::Range(0.0, 1.0));
  gen_random->add_option("--seed", g.seed, "Random seed");

  auto *gen_lb = gen->add_subcommand("lowerbound", "Instance that needs quadratically many moves");
  gen_lb->add_option("--n", g.n, "Even module count")->required();

  auto *gen_3p = gen->add_subcommand("3partition", "Layout encoding a 3-Partition instance");
  gen_3p->add_option("--elements", g.elements, "Comma separated elements")->required()->delimiter(',');
  gen_3p->add_option("--bound", g.bound, "Triple sum B")->required();

  auto *gen_ia = gen->add_subcommand("inapprox", "3-Partition layout extended with a gap ladder");
  gen_ia->add_option("--elements", g.elements, "Comma separated elements")->required()->delimiter(',');
  gen_ia->add_option("--bound", g.bound, "Triple sum B")->required();
  gen_ia->add_option("--r", g.r, "Ladder length")->required();

  auto *gen_flat = gen->add_subcommand("flatten", "Join 2D rows into one device with separators");
  gen_flat->add_option("--rows", g.rows, "Comma separated row type strings")->required()->delimiter(',');
  gen_flat->add_option("--density", g.density, "Fill with random modules (0 leaves it empty)")
      ->check(CLI::Range(0.0, 1.0));
  gen_flat->add_option("--seed", g.seed, "Random seed");
  for (auto *sub : gen->get_subcommands({})) sub->add_option("--out", g.out_path, "Output file (default stdout)");

  auto *defrag_cmd = app.add_subcommand("defrag", "Run a strategy on an instance");
  defrag_cmd->add_option("--strategy", o.strategy, "lrs, greedy or tabu")
      ->required()
      ->check(CLI::IsMember({"lrs", "greedy", "tabu"}));
  defrag_cmd->add_option("--in", o.in_path, "Instance file")->required();
  defrag_cmd->add_option("--out", o.out_path, "Write the best layout here");

  auto *sweep = app.add_subcommand("sweep", "Average strategy quality over a density range (CSV)");
  sweep->add_option("--density-from", o.sweep.density_from)->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--density-to", o.sweep.density_to)->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--step", o.sweep.step);
  sweep->add_option("--runs", o.sweep.runs)->check(CLI::NonNegativeNumber);
  sweep->add_option("--device", o.sweep_device)->check(CLI::IsMember({"het94", "homogeneous94"}));
  sweep->add_option("--seed", o.sweep.seed);

  auto *makespan = app.add_subcommand("makespan", "Schedule random workloads with and without compaction (CSV)");
  makespan->add_option("--size-mean", o.makespan.size_mean)->check(CLI::PositiveNumber);
  makespan->add_option("--duration-mean", o.makespan.duration_mean)->check(CLI::PositiveNumber);
  makespan->add_option("--runs", o.makespan.runs)->check(CLI::NonNegativeNumber);
  makespan->add_option("--count", o.makespan.count, "Modules per workload")->check(CLI::NonNegativeNumber);
  makespan->add_option("--length", o.makespan.length, "Device length")->check(CLI::PositiveNumber);
  makespan->add_option("--policy", o.policy)->check(CLI::IsMember({"none", "greedy", "tabu", "all"}));
  makespan->add_option("--seed", o.makespan.seed, "Seed of the first run; run r uses seed + r");

  for (auto *sub : {sweep, makespan}) {
    sub->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
    sub->add_option("--out", o.out_path, "Output file (default stdout)");
  }

  auto *oracle = app.add_subcommand("oracle", "Exact optimum by breadth-first search");
  oracle->add_option("--in", o.in_path, "Instance file")->required();
  oracle->add_option("--target", o.target, "Minimum moves to reach a free interval of this size");
  oracle->add_option("--budget", o.budget, "State budget")->check(CLI::PositiveNumber);
  oracle->add_flag("--interchangeable", o.interchangeable, "Treat modules with equal patterns as identical");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen_random->parsed()) {
      run_gen_random(g, out);
    } else if (gen_lb->parsed()) {
      emit(g.out_path, out, [&](std::ostream &f) {
        write_instance(f, lower_bound_instance(g.n), {"lower-bound instance, n = " + std::to_string(g.n)});
      });
    } else if (gen_3p->parsed()) {
      ThreePartitionInstance inst = three_partition_instance(g.elements, g.bound);
      emit(g.out_path, out, [&](std::ostream &f) {
        write_instance(f, inst.layout, {"target free interval " + std::to_string(inst.target_size)});
      });
    } else if (gen_ia->parsed()) {
      emit(g.out_path, out,
           [&](std::ostream &f) { write_instance(f, inapprox_instance(g.elements, g.bound, g.r)); });
    } else if (gen_flat->parsed()) {
      run_gen_flatten(g, out);
    } else if (defrag_cmd->parsed()) {
      return run_defrag(o, out);
    } else if (sweep->parsed()) {
      return run_sweep_command(o, out);
    } else if (makespan->parsed()) {
      return run_makespan_command(o, out);
    } else if (oracle->parsed()) {
      return run_oracle(o, out);
    }
    return kExitOk;
  } catch (const UsageError &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DefragError &e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return e.code() == ErrorCode::PreconditionViolated ? kExitPrecondition : kExitInvalidInstance;
  }
}

}  // namespace defrag::tools
