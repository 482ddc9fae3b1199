#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "districting/io.hpp"

int main(int argc, char** argv) {
  using namespace districting;

  CLI::App app{"Partitions a node-weighted adjacency graph into contiguous,"
               " population-balanced districts by adaptive randomized rounding"};
  app.require_subcommand(1);

  std::string nodes_path, edges_path, patches_path, out_dir;
  std::string deviation = "0.05";
  std::int32_t districts = 0;

  const auto add_instance_flags = [&](CLI::App* cmd) {
    cmd->add_option("--nodes", nodes_path, "node CSV (header id,population)")->required();
    cmd->add_option("--edges", edges_path, "edge CSV (header source,target)")->required();
    cmd->add_option("--patches", patches_path,
                    "extra connectivity edges (header source,target)");
    cmd->add_option("--districts", districts, "number of districts")->required();
    cmd->add_option("--deviation", deviation,
                    "allowed fractional population deviation (default 0.05)");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve an instance and write the best plan");
  add_instance_flags(solve);
  std::int64_t max_trials = 1000;
  std::int32_t restarts = 1;
  std::uint64_t seed = 0;
  std::string mode = "down";
  std::string trace_path;
  solve->add_option("--max-trials", max_trials, "trials per restart (default 1000)");
  solve->add_option("--restarts", restarts, "independent restarts (default 1)");
  solve->add_option("--seed", seed, "rng seed (default 0)");
  solve->add_option("--mode", mode, "perturbation mode (default down)")
      ->check(CLI::IsMember({"down", "up"}));
  solve->add_option("--trace", trace_path, "write a per-trial trace CSV to this path");
  solve->add_option("--out-dir", out_dir, "directory for assignment.csv and report.txt")
      ->required();

  CLI::App* score = app.add_subcommand("score", "evaluate an existing assignment");
  add_instance_flags(score);
  std::string assignment_path;
  score->add_option("--assignment", assignment_path, "assignment CSV (header id,district)")
      ->required();
  score->add_option("--out-dir", out_dir, "directory for report.txt")->required();

  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic instance");
  gen->require_subcommand(1);
  std::int64_t pop_min = 1, pop_max = 1;
  std::uint64_t gen_seed = 0;
  std::string gen_out;

  CLI::App* grid = gen->add_subcommand("grid", "rows x cols grid with unit or random populations");
  std::int32_t rows = 0, cols = 0;
  grid->add_option("--rows", rows, "grid rows")->required();
  grid->add_option("--cols", cols, "grid columns")->required();

  CLI::App* planar = gen->add_subcommand(
      "random-planar", "random points joined to nearest neighbors, bridged to connectivity");
  std::int32_t gen_nodes = 0, gen_neighbors = 5;
  planar->add_option("--nodes", gen_nodes, "node count")->required();
  planar->add_option("--neighbors", gen_neighbors, "nearest neighbors per node (default 5)");

  for (CLI::App* cmd : {grid, planar}) {
    cmd->add_option("--pop-min", pop_min, "minimum population (default 1)");
    cmd->add_option("--pop-max", pop_max, "maximum population (default 1)");
    cmd->add_option("--seed", gen_seed, "rng seed (default 0)");
    cmd->add_option("--out-dir", gen_out, "directory for nodes.csv and edges.csv")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  InstanceFiles files;
  files.nodes_path = nodes_path;
  files.edges_path = edges_path;
  if (!patches_path.empty()) files.patches_path = patches_path;

  if (*solve) {
    SolveOptions opts;
    opts.files = files;
    opts.districts = districts;
    opts.deviation = deviation;
    opts.max_trials = max_trials;
    opts.restarts = restarts;
    opts.rng_seed = seed;
    opts.mode = mode == "up" ? PerturbMode::kUp : PerturbMode::kDown;
    opts.out_dir = out_dir;
    if (!trace_path.empty()) opts.trace_path = trace_path;
    return solve_command(opts, std::cout, std::cerr);
  }
  if (*score) {
    ScoreOptions opts;
    opts.files = files;
    opts.assignment_path = assignment_path;
    opts.districts = districts;
    opts.deviation = deviation;
    opts.out_dir = out_dir;
    return score_command(opts, std::cout, std::cerr);
  }
  if (*grid) {
    GridGenOptions opts;
    opts.rows = rows;
    opts.cols = cols;
    opts.pop_min = pop_min;
    opts.pop_max = pop_max;
    opts.seed = gen_seed;
    opts.out_dir = gen_out;
    return gen_grid_command(opts, std::cout, std::cerr);
  }
  PlanarGenOptions opts;
  opts.nodes = gen_nodes;
  opts.neighbors = gen_neighbors;
  opts.pop_min = pop_min;
  opts.pop_max = pop_max;
  opts.seed = gen_seed;
  opts.out_dir = gen_out;
  return gen_planar_command(opts, std::cout, std::cerr);
}
