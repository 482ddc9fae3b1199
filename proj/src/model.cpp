#include "districting/model.hpp"

#include <stdexcept>
#include <string>

namespace districting {

namespace {

// Shared by the parallel and serial totals; groups must be the
// district node sets of an already validated plan.
std::int64_t score_district_groups(const ProblemInstance& inst,
                                   const std::vector<std::vector<NodeId>>& groups,
                                   bool parallel) {
  const std::int32_t k = inst.districts();
  for (std::int32_t d = 0; d < k; ++d) {
    if (groups[d].empty()) {
      throw std::invalid_argument("total_score_phase2: district " + std::to_string(d) +
                                  " is empty");
    }
    if (!is_connected_subset(inst.graph(), groups[d])) {
      throw std::invalid_argument("total_score_phase2: district " + std::to_string(d) +
                                  " is disconnected");
    }
  }
  std::vector<std::int64_t> per_district(k, 0);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int32_t d = 0; d < k; ++d) {
    per_district[d] = district_score(inst, groups[d]).score;
  }
  std::int64_t total = 0;
  for (std::int64_t s : per_district) total += s;
  return total;
}

}  // namespace

ProblemInstance make_instance(AdjacencyGraph g, std::int32_t k, const Rational& delta) {
  const NodeId n = g.node_count();
  if (k < 1) throw std::invalid_argument("make_instance: k must be at least 1");
  if (k > n) {
    throw std::invalid_argument("make_instance: k = " + std::to_string(k) +
                                " exceeds node count " + std::to_string(n));
  }
  if (delta < Rational(0) || delta >= Rational(1)) {
    throw std::invalid_argument("make_instance: deviation must lie in [0, 1), got " +
                                delta.to_string());
  }
  ProblemInstance inst;
  inst.distances_ = all_pairs_distances(g);  // throws if disconnected
  inst.graph_ = std::move(g);
  inst.k_ = k;
  inst.delta_ = delta;
  inst.p_bar_ = Rational(inst.graph_.total_population(), k);
  inst.p_min_ = (Rational(1) - delta) * inst.p_bar_;
  inst.p_max_ = (Rational(1) + delta) * inst.p_bar_;

  std::int64_t max_row = 0;
  for (NodeId u = 0; u < n; ++u) {
    max_row = std::max(max_row, inst.distances_.row_sum(u));
  }
  // One district's score is at most max_row, so k of them stay below.
  inst.big_m_ = 1 + static_cast<std::int64_t>(k) * max_row;
  return inst;
}

void validate_plan(const ProblemInstance& inst, const Plan& plan) {
  const NodeId n = inst.graph().node_count();
  if (static_cast<NodeId>(plan.assignment.size()) != n) {
    throw std::invalid_argument("plan assigns " + std::to_string(plan.assignment.size()) +
                                " nodes, instance has " + std::to_string(n));
  }
  for (NodeId u = 0; u < n; ++u) {
    const std::int32_t d = plan.assignment[u];
    if (d < 0 || d >= inst.districts()) {
      throw std::invalid_argument("plan assigns node " + std::to_string(u) +
                                  " to invalid district " + std::to_string(d));
    }
  }
}

std::vector<std::vector<NodeId>> district_node_sets(const ProblemInstance& inst,
                                                    const Plan& plan) {
  validate_plan(inst, plan);
  std::vector<std::vector<NodeId>> groups(inst.districts());
  for (NodeId u = 0; u < inst.graph().node_count(); ++u) {
    groups[plan.assignment[u]].push_back(u);
  }
  return groups;
}

std::int64_t district_population(const ProblemInstance& inst, const Plan& plan, std::int32_t d) {
  validate_plan(inst, plan);
  if (d < 0 || d >= inst.districts()) {
    throw std::invalid_argument("district_population: invalid district " + std::to_string(d));
  }
  std::int64_t pop = 0;
  for (NodeId u = 0; u < inst.graph().node_count(); ++u) {
    if (plan.assignment[u] == d) pop += inst.graph().population(u);
  }
  return pop;
}

bool is_feasible(const ProblemInstance& inst, const Plan& plan) {
  const auto groups = district_node_sets(inst, plan);
  for (const auto& nodes : groups) {
    if (nodes.empty()) return false;
    std::int64_t pop = 0;
    for (NodeId u : nodes) pop += inst.graph().population(u);
    if (Rational(pop) < inst.min_population() || Rational(pop) > inst.max_population()) {
      return false;
    }
    if (!is_connected_subset(inst.graph(), nodes)) return false;
  }
  return true;
}

DistrictScore district_score(const ProblemInstance& inst, std::span<const NodeId> nodes) {
  if (nodes.empty()) throw std::invalid_argument("district_score: empty district");
  const DistanceMatrix& dist = inst.distances();
  DistrictScore best;
  for (NodeId u : nodes) {
    std::int64_t sum = 0;
    for (NodeId v : nodes) sum += dist(u, v);
    // Strict < keeps the lowest node id on ties; node lists are sorted.
    if (best.center < 0 || sum < best.score) {
      best.center = u;
      best.score = sum;
    }
  }
  return best;
}

std::int64_t total_score_phase2(const ProblemInstance& inst, const Plan& plan) {
  return score_district_groups(inst, district_node_sets(inst, plan), true);
}

std::int64_t total_score_phase2_serial(const ProblemInstance& inst, const Plan& plan) {
  return score_district_groups(inst, district_node_sets(inst, plan), false);
}

Rational infeasibility_score(const ProblemInstance& inst, const Plan& plan) {
  validate_plan(inst, plan);
  std::vector<std::int64_t> pops(inst.districts(), 0);
  for (NodeId u = 0; u < inst.graph().node_count(); ++u) {
    pops[plan.assignment[u]] += inst.graph().population(u);
  }
  Rational score(inst.big_m());
  for (std::int64_t pop : pops) {
    score += max(Rational(0), Rational(pop) - inst.max_population());
    score += max(Rational(0), inst.min_population() - Rational(pop));
  }
  return score;
}

PlanEvaluation evaluate_plan(const ProblemInstance& inst, const Plan& plan) {
  const auto groups = district_node_sets(inst, plan);
  bool feasible = true;
  std::vector<std::int64_t> pops(inst.districts(), 0);
  for (std::int32_t d = 0; d < inst.districts() && feasible; ++d) {
    if (groups[d].empty()) {
      feasible = false;
      break;
    }
    for (NodeId u : groups[d]) pops[d] += inst.graph().population(u);
    if (Rational(pops[d]) < inst.min_population() || Rational(pops[d]) > inst.max_population() ||
        !is_connected_subset(inst.graph(), groups[d])) {
      feasible = false;
    }
  }
  if (feasible) {
    return {Rational(score_district_groups(inst, groups, true)), true};
  }
  return {infeasibility_score(inst, plan), false};
}

Rational conditional_objective(const ProblemInstance& inst, const Plan& plan) {
  return evaluate_plan(inst, plan).score;
}

}  // namespace districting
