#include "doctest.h"

#include "cli.hpp"

#include "defrag/instance_io.hpp"
#include "support/brute_force.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using defrag::tools::dispatch;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  Run r;
  r.code = dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

/// Scratch directory removed at scope exit.
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("defrag-cli-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string &name, const std::string &content = "") const {
    const auto p = path / name;
    if (!content.empty()) std::ofstream(p) << content;
    return p.string();
  }
};

bool has_line(const std::string &text, const std::string &line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (l == line) return true;
  }
  return false;
}

std::vector<std::string> lines(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("defrag with tabu on the two-module fixture") {
  TempDir tmp;
  const auto in = tmp.file("a.txt", "device 10\nmodule 1 1 ll\nmodule 2 5 ll\n");
  const auto best = tmp.file("best.txt");
  Run r = run({"defrag", "--strategy", "tabu", "--in", in, "--out", best});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "best_max_free 6"));
  CHECK(has_line(r.out, "best_fitness 1"));
  CHECK(has_line(r.out, "before_max_free 3"));
  CHECK(defrag::max_free_interval(defrag::read_instance_file(best)) == 6);
}

TEST_CASE("gen lowerbound") {
  Run r = run({"gen", "lowerbound", "--n", "8"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  defrag::Layout layout = defrag::read_instance(in);
  std::vector<int> sizes;
  for (const auto &p : layout.placements()) sizes.push_back(p.module.size());
  CHECK(sizes == std::vector<int>{8, 6, 4, 2, 2, 4, 6, 8});
  CHECK(run({"gen", "lowerbound", "--n", "3"}).code == 2);
}

TEST_CASE("left-right shift above the density bound") {
  TempDir tmp;
  const auto dense = tmp.file("dense.txt", "device 10\nmodule 1 0 lll\nmodule 2 5 lll\n");
  Run r = run({"defrag", "--strategy", "lrs", "--in", dense});
  CHECK(r.code == 3);
  CHECK(r.err.find("density 0.6") != std::string::npos);
  CHECK(r.err.find("bound 0.35") != std::string::npos);
}

TEST_CASE("usage and input errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"defrag", "--strategy", "anneal", "--in", "x"}).code == 1);
  CHECK(run({"defrag", "--strategy", "tabu"}).code == 1);
  CHECK(run({"makespan", "--policy", "fifo"}).code == 1);
  CHECK(run({"gen", "random", "--device", "het94", "--length", "10"}).code == 1);
  CHECK(run({"--help"}).code == 0);

  TempDir tmp;
  CHECK(run({"defrag", "--strategy", "tabu", "--in", (tmp.path / "missing.txt").string()}).code == 2);
  const auto bad = tmp.file("bad.txt", "device 4\nmodule 1 0 ll\nmodule 2 1 ll\n");
  Run overlap = run({"oracle", "--in", bad});
  CHECK(overlap.code == 2);
  CHECK_FALSE(overlap.err.empty());
}

TEST_CASE("generated instances round-trip through every consumer") {
  TempDir tmp;
  const std::vector<std::vector<std::string>> generators{
      {"gen", "random", "--device", "het94", "--density", "0.7", "--seed", "3"},
      {"gen", "random", "--length", "12", "--density", "0.3", "--seed", "9"},
      {"gen", "random", "--types", "llmllllm", "--density", "0.5"},
      {"gen", "lowerbound", "--n", "2"},
      {"gen", "3partition", "--elements", "3,3,4", "--bound", "10"},
      {"gen", "inapprox", "--elements", "4,4,4", "--bound", "12", "--r", "1"},
      {"gen", "flatten", "--rows", "llm,lll", "--density", "0.4", "--seed", "2"},
  };
  int k = 0;
  for (auto args : generators) {
    const auto path = tmp.file("g" + std::to_string(k++) + ".txt");
    args.insert(args.end(), {"--out", path});
    REQUIRE(run(args).code == 0);
    CHECK(run({"defrag", "--strategy", "greedy", "--in", path}).code == 0);
    CHECK(run({"defrag", "--strategy", "tabu", "--in", path}).code == 0);
    const int lrs = run({"defrag", "--strategy", "lrs", "--in", path}).code;
    CHECK((lrs == 0 || lrs == 3));
    CHECK(run({"oracle", "--in", path, "--target", "1", "--budget", "1000"}).code == 0);
  }
}

TEST_CASE("random generation is reproducible from the seed") {
  const std::vector<std::string> args{"gen", "random", "--device", "homogeneous94", "--density", "0.6", "--seed", "11"};
  CHECK(run(args).out == run(args).out);
  auto other = args;
  other.back() = "12";
  CHECK(run(args).out != run(other).out);
}

TEST_CASE("oracle subcommand") {
  TempDir tmp;
  const auto in = tmp.file("a.txt", "device 10\nmodule 1 1 ll\nmodule 2 5 ll\n");
  Run r = run({"oracle", "--in", in});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "optimum_max_free 6"));
  CHECK(has_line(r.out, "min_moves_to_optimum 2"));
  CHECK(has_line(r.out, "truncated no"));
  CHECK(has_line(run({"oracle", "--in", in, "--target", "7"}).out, "min_moves unreachable"));
  CHECK(has_line(run({"oracle", "--in", in, "--target", "5", "--interchangeable"}).out, "min_moves 1"));
}

TEST_CASE("sweep CSV is deterministic across thread counts") {
  const std::vector<std::string> base{"sweep", "--runs", "6", "--density-from", "0.5", "--density-to", "0.7",
                                      "--step", "0.1", "--seed", "4"};
  auto one = base;
  one.insert(one.end(), {"--threads", "1"});
  auto many = base;
  many.insert(many.end(), {"--threads", "4"});
  Run a = run(one);
  Run b = run(many);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto rows = lines(a.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].rfind("target_density,runs,avg_density,avg_max_free_before", 0) == 0);
  CHECK(rows[3].rfind("0.7,6,", 0) == 0);
}

TEST_CASE("makespan CSV") {
  const std::vector<std::string> base{"makespan", "--runs", "3", "--count", "30", "--size-mean", "40",
                                      "--duration-mean", "50", "--seed", "7"};
  auto one = base;
  one.insert(one.end(), {"--threads", "1"});
  Run a = run(one);
  CHECK(a.code == 0);
  CHECK(a.out == run(base).out);
  const auto rows = lines(a.out);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] ==
        "seed,policy,size_mean,duration_mean,makespan,defrag_invocations,relocations,total_relocation_cost,"
        "rejected_count");
  CHECK(rows[1].rfind("7,none,40,50,", 0) == 0);
  CHECK(rows[2].rfind("7,greedy,", 0) == 0);
  CHECK(rows[9].rfind("9,tabu,", 0) == 0);

  auto tabu_only = base;
  tabu_only.insert(tabu_only.end(), {"--policy", "tabu"});
  CHECK(lines(run(tabu_only).out).size() == 4);

  // Workload sizes reach up to 200, so a narrow device drops the widest requests.
  Run narrow = run({"makespan", "--runs", "1", "--count", "50", "--size-mean", "40", "--length", "30",
                    "--policy", "none"});
  REQUIRE(narrow.code == 0);
  CHECK(lines(narrow.out)[1].back() != '0');
}
