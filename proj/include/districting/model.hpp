#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "districting/graph.hpp"
#include "districting/rational.hpp"

namespace districting {

// Assignment of every node to exactly one district label in 0..k-1.
struct Plan {
  std::vector<std::int32_t> assignment;
  bool operator==(const Plan&) const = default;
};

// A districting instance: the graph, its precomputed full-graph hop
// distances, the district count k and exact population bounds
// p_min = (1-delta)*p_bar, p_max = (1+delta)*p_bar with p_bar = total/k.
// Immutable after make_instance; all scoring below is pure, so plans
// may be evaluated concurrently against a shared instance.
class ProblemInstance {
 public:
  const AdjacencyGraph& graph() const { return graph_; }
  const DistanceMatrix& distances() const { return distances_; }
  std::int32_t districts() const { return k_; }
  const Rational& delta() const { return delta_; }
  const Rational& mean_population() const { return p_bar_; }
  const Rational& min_population() const { return p_min_; }
  const Rational& max_population() const { return p_max_; }

  // Strictly larger than any attainable total gerrymander score:
  // 1 + k * max_u sum_v dist(u, v).
  std::int64_t big_m() const { return big_m_; }

 private:
  friend ProblemInstance make_instance(AdjacencyGraph g, std::int32_t k, const Rational& delta);

  AdjacencyGraph graph_;
  DistanceMatrix distances_;
  std::int32_t k_ = 0;
  Rational delta_;
  Rational p_bar_, p_min_, p_max_;
  std::int64_t big_m_ = 0;
};

// Requires a connected graph, 1 <= k <= node count and 0 <= delta < 1.
// Bounds are exact rationals; no floating point is involved.
ProblemInstance make_instance(AdjacencyGraph g, std::int32_t k, const Rational& delta);

// Throws unless plan assigns every node a label in 0..k-1.
void validate_plan(const ProblemInstance& inst, const Plan& plan);

// Node lists per district label, each sorted ascending.
std::vector<std::vector<NodeId>> district_node_sets(const ProblemInstance& inst, const Plan& plan);

std::int64_t district_population(const ProblemInstance& inst, const Plan& plan, std::int32_t d);

// Every district nonempty, connected, and within [p_min, p_max].
bool is_feasible(const ProblemInstance& inst, const Plan& plan);

struct DistrictScore {
  NodeId center = -1;
  std::int64_t score = 0;
};

// Center minimizing the sum of full-graph hop distances to the member
// nodes (ties to the lowest node id) and that minimal sum. Throws on
// an empty node set.
DistrictScore district_score(const ProblemInstance& inst, std::span<const NodeId> nodes);

// Total gerrymander score: sum of district_score over all districts.
// Throws if any district is empty or disconnected. The default version
// scores districts in parallel under OpenMP; the serial version is the
// reference kernel kept for tests and benchmarks.
std::int64_t total_score_phase2(const ProblemInstance& inst, const Plan& plan);
std::int64_t total_score_phase2_serial(const ProblemInstance& inst, const Plan& plan);

// big_m plus the summed per-district population excesses below p_min
// and above p_max, held exactly.
Rational infeasibility_score(const ProblemInstance& inst, const Plan& plan);

struct PlanEvaluation {
  Rational score;
  bool feasible = false;
};

// Two-phase conditional objective: infeasibility_score for infeasible
// plans, total gerrymander score for feasible ones. Because big_m
// dominates every gerrymander total, every feasible plan scores
// strictly below every infeasible plan.
PlanEvaluation evaluate_plan(const ProblemInstance& inst, const Plan& plan);
Rational conditional_objective(const ProblemInstance& inst, const Plan& plan);

}  // namespace districting
