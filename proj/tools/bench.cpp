#include <chrono>
#include <cstdint>
#include <iostream>
#include <unordered_map>

#include <CLI11.hpp>

#include "districting/arr.hpp"
#include "districting/io.hpp"

using namespace districting;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

AdjacencyGraph graph_from_generated(const GeneratedInstance& gi) {
  std::unordered_map<std::string, NodeId> index;
  std::vector<std::pair<NodeId, std::int64_t>> nodes;
  nodes.reserve(gi.nodes.size());
  for (std::size_t i = 0; i < gi.nodes.size(); ++i) {
    index.emplace(gi.nodes[i].first, static_cast<NodeId>(i));
    nodes.emplace_back(static_cast<NodeId>(i), gi.nodes[i].second);
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(gi.edges.size());
  for (const auto& [a, b] : gi.edges) edges.emplace_back(index.at(a), index.at(b));
  return build_graph(nodes, edges);
}

}  // namespace

int main(int argc, char** argv) {
  std::int32_t nodes = 1849;
  std::int32_t neighbors = 5;
  std::int32_t districts = 8;
  std::int64_t trials = 256;
  std::uint64_t seed = 1;

  CLI::App app{"Benchmarks the OpenMP kernels against their serial references"};
  app.add_option("--nodes", nodes, "node count of the generated instance (default 1849)");
  app.add_option("--neighbors", neighbors, "nearest neighbors per node (default 5)");
  app.add_option("--districts", districts, "district count (default 8)");
  app.add_option("--trials", trials, "ARR trials to time (default 256)");
  app.add_option("--seed", seed, "rng seed (default 1)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  std::cout << "instance: " << nodes << " nodes, " << districts << " districts (random planar, "
            << neighbors << " neighbors, seed " << seed << ")\n";
  const AdjacencyGraph g = graph_from_generated(gen_random_planar(nodes, neighbors, 1, 1, seed));
  std::cout << "edges: " << g.edge_count() << "\n\n";

  auto start = Clock::now();
  const DistanceMatrix serial_dist = all_pairs_distances_serial(g);
  const double apsp_serial = elapsed_seconds(start);
  start = Clock::now();
  const DistanceMatrix parallel_dist = all_pairs_distances(g);
  const double apsp_parallel = elapsed_seconds(start);
  bool match = true;
  for (NodeId u = 0; u < g.node_count() && match; ++u) {
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (serial_dist(u, v) != parallel_dist(u, v)) {
        match = false;
        break;
      }
    }
  }
  std::cout << "all-pairs distances  serial " << apsp_serial << " s   openmp " << apsp_parallel
            << " s   speedup " << apsp_serial / apsp_parallel << "   results "
            << (match ? "match" : "DIFFER") << "\n";

  const ProblemInstance inst = make_instance(g, districts, Rational(1, 20));
  std::mt19937_64 rng(seed);
  FractionalSeed fractional = FractionalSeed::centroid(g.node_count(), districts);
  FractionalSeed perturbed(g.node_count(), districts);
  perturb_into(fractional, rng, PerturbMode::kDown, perturbed);
  const Plan plan = round_to_plan(perturbed, g, districts);

  constexpr int kScoreReps = 20;
  start = Clock::now();
  std::int64_t serial_total = 0;
  for (int i = 0; i < kScoreReps; ++i) serial_total = total_score_phase2_serial(inst, plan);
  const double score_serial = elapsed_seconds(start) / kScoreReps;
  start = Clock::now();
  std::int64_t parallel_total = 0;
  for (int i = 0; i < kScoreReps; ++i) parallel_total = total_score_phase2(inst, plan);
  const double score_parallel = elapsed_seconds(start) / kScoreReps;
  std::cout << "plan scoring         serial " << score_serial << " s   openmp " << score_parallel
            << " s   speedup " << score_serial / score_parallel << "   results "
            << (serial_total == parallel_total ? "match" : "DIFFER") << "\n";

  ArrConfig cfg;
  cfg.max_trials = trials;
  cfg.rng_seed = seed;
  start = Clock::now();
  const ArrResult result = run_arr(inst, cfg);
  const double arr_time = elapsed_seconds(start);
  std::cout << "arr                  " << trials << " trials in " << arr_time << " s   "
            << static_cast<double>(trials) / arr_time << " trials/s   best "
            << result.best_score.to_string() << (result.feasible ? " (feasible)" : " (infeasible)")
            << "\n";
  return (match && serial_total == parallel_total) ? 0 : 1;
}
