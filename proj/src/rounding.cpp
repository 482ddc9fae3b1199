#include "districting/rounding.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>

#include "districting/rng.hpp"

namespace districting {

FractionalSeed::FractionalSeed(NodeId nodes, std::int32_t districts, double fill)
    : nodes_(nodes), districts_(districts) {
  if (nodes < 0 || districts < 1) {
    throw std::invalid_argument("FractionalSeed: invalid dimensions");
  }
  values_.assign(static_cast<std::size_t>(nodes) * static_cast<std::size_t>(districts), fill);
}

FractionalSeed FractionalSeed::centroid(NodeId nodes, std::int32_t districts) {
  return FractionalSeed(nodes, districts, 0.5);
}

FractionalSeed FractionalSeed::indicator(const Plan& plan, std::int32_t districts) {
  FractionalSeed seed(static_cast<NodeId>(plan.assignment.size()), districts, 0.0);
  for (NodeId u = 0; u < seed.node_count(); ++u) {
    const std::int32_t d = plan.assignment[u];
    if (d < 0 || d >= districts) {
      throw std::invalid_argument("indicator: label " + std::to_string(d) + " out of range");
    }
    seed(u, d) = 1.0;
  }
  return seed;
}

void FractionalSeed::fill(double v) { std::fill(values_.begin(), values_.end(), v); }

void FractionalSeed::validate() const {
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("seed entry " + std::to_string(v) + " outside [0,1]");
    }
  }
}

namespace {

struct Candidate {
  double value;
  double tie_prio;  // 0 unless a tie rng is in use
  NodeId node;
  std::int32_t district;
};

// Priority order: larger value first, then larger random priority,
// then lower node id, then lower district label.
struct CandidateWorse {
  bool operator()(const Candidate& a, const Candidate& b) const {
    if (a.value != b.value) return a.value < b.value;
    if (a.tie_prio != b.tie_prio) return a.tie_prio < b.tie_prio;
    if (a.node != b.node) return a.node > b.node;
    return a.district > b.district;
  }
};

}  // namespace

Plan round_to_plan(const FractionalSeed& seed, const AdjacencyGraph& g, std::int32_t k,
                   std::mt19937_64* tie_rng) {
  const NodeId n = g.node_count();
  if (k < 1) throw std::invalid_argument("round_to_plan: k must be at least 1");
  if (n < k) {
    throw std::invalid_argument("round_to_plan: " + std::to_string(n) + " nodes cannot form " +
                                std::to_string(k) + " districts");
  }
  if (seed.node_count() != n || seed.district_count() != k) {
    throw std::invalid_argument("round_to_plan: seed dimensions do not match instance");
  }

  // A fixed random total order breaks any tie set uniformly.
  std::vector<double> tie_prio;
  if (tie_rng != nullptr) {
    tie_prio.resize(static_cast<std::size_t>(n) * k);
    for (double& p : tie_prio) p = u01(*tie_rng);
  }
  const auto prio = [&](NodeId u, std::int32_t d) {
    return tie_prio.empty() ? 0.0 : tie_prio[static_cast<std::size_t>(u) * k + d];
  };

  Plan plan;
  plan.assignment.assign(n, -1);
  NodeId assigned = 0;

  std::priority_queue<Candidate, std::vector<Candidate>, CandidateWorse> frontier;
  // One pending frontier entry per (node, district) is enough; the
  // entry's admissibility never expires while the node is unassigned.
  std::vector<std::uint8_t> enqueued(static_cast<std::size_t>(n) * k, 0);

  const auto grow_frontier = [&](NodeId w, std::int32_t d) {
    for (NodeId v : g.neighbors(w)) {
      if (plan.assignment[v] >= 0) continue;
      const std::size_t slot = static_cast<std::size_t>(v) * k + d;
      if (!enqueued[slot]) {
        enqueued[slot] = 1;
        frontier.push({seed(v, d), prio(v, d), v, d});
      }
    }
  };

  // Every district is empty at the start, so the first k steps each
  // seed one district with the best unassigned node for its column.
  for (std::int32_t d = 0; d < k; ++d) {
    Candidate best{0.0, 0.0, -1, d};
    for (NodeId u = 0; u < n; ++u) {
      if (plan.assignment[u] >= 0) continue;
      Candidate c{seed(u, d), prio(u, d), u, d};
      if (best.node < 0 || CandidateWorse{}(best, c)) best = c;
    }
    plan.assignment[best.node] = d;
    ++assigned;
    grow_frontier(best.node, d);
  }

  while (assigned < n) {
    if (frontier.empty()) {
      throw std::runtime_error(
          "round_to_plan: no assignable node adjacent to any district; graph must be connected");
    }
    const Candidate c = frontier.top();
    frontier.pop();
    if (plan.assignment[c.node] >= 0) continue;
    plan.assignment[c.node] = c.district;
    ++assigned;
    grow_frontier(c.node, c.district);
  }
  return plan;
}

}  // namespace districting
