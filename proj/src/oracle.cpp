#include "districting/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace districting {

namespace {

using Mask = std::uint32_t;

// All connected subsets of avail that contain cur's anchor, grown one
// frontier vertex at a time. Each subset is produced exactly once: the
// lowest frontier vertex is either excluded for good or added to cur.
void connected_subsets(const std::vector<Mask>& adj, Mask avail, Mask cur, Mask frontier,
                       Mask forbidden, std::vector<Mask>& out) {
  if (frontier == 0) {
    out.push_back(cur);
    return;
  }
  const Mask vbit = frontier & (~frontier + 1);
  connected_subsets(adj, avail, cur, frontier & ~vbit, forbidden | vbit, out);
  const int v = std::countr_zero(vbit);
  const Mask grown = cur | vbit;
  const Mask next = (frontier | (adj[v] & avail)) & ~(grown | forbidden);
  connected_subsets(adj, avail, grown, next, forbidden, out);
}

// Unlabeled partitions of `remaining` into parts_left connected parts.
// Each part is anchored at the lowest remaining node, so every
// partition appears exactly once, parts ordered by anchor.
void partitions_rec(const std::vector<Mask>& adj, Mask remaining, std::int32_t parts_left,
                    std::vector<Mask>& parts, std::vector<std::vector<Mask>>& out) {
  if (parts_left == 0) {
    if (remaining == 0) out.push_back(parts);
    return;
  }
  if (std::popcount(remaining) < parts_left) return;
  const Mask anchor = remaining & (~remaining + 1);
  const int a = std::countr_zero(anchor);
  std::vector<Mask> subsets;
  connected_subsets(adj, remaining, anchor, adj[a] & remaining & ~anchor, 0, subsets);
  for (const Mask s : subsets) {
    parts.push_back(s);
    partitions_rec(adj, remaining & ~s, parts_left - 1, parts, out);
    parts.pop_back();
  }
}

std::vector<std::vector<Mask>> unlabeled_partitions(const AdjacencyGraph& g, std::int32_t k,
                                                    const char* caller) {
  const NodeId n = g.node_count();
  if (n > 16) {
    throw std::invalid_argument(std::string(caller) + ": limited to 16 nodes, got " +
                                std::to_string(n));
  }
  if (k < 1 || k > n) {
    throw std::invalid_argument(std::string(caller) + ": need 1 <= districts <= node count");
  }
  std::vector<Mask> adj(n, 0);
  for (NodeId u = 0; u < n; ++u) {
    for (const NodeId v : g.neighbors(u)) adj[u] |= Mask(1) << v;
  }
  std::vector<std::vector<Mask>> out;
  std::vector<Mask> parts;
  partitions_rec(adj, (Mask(1) << n) - 1, k, parts, out);
  return out;
}

// Parts arrive anchored by lowest node, so labeling part i with i is
// the first-appearance labeling: the lexicographically smallest
// assignment among all relabelings of this partition.
Plan plan_from_parts(const std::vector<Mask>& parts, NodeId n) {
  Plan p;
  p.assignment.assign(n, -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Mask m = parts[i];
    while (m) {
      p.assignment[std::countr_zero(m)] = static_cast<std::int32_t>(i);
      m &= m - 1;
    }
  }
  return p;
}

}  // namespace

std::vector<Plan> all_connected_partitions(const AdjacencyGraph& g, std::int32_t k) {
  const auto unlabeled = unlabeled_partitions(g, k, "all_connected_partitions");
  const NodeId n = g.node_count();
  std::vector<Plan> plans;
  std::vector<std::int32_t> perm(k);
  for (const auto& parts : unlabeled) {
    std::iota(perm.begin(), perm.end(), 0);
    do {
      Plan p;
      p.assignment.assign(n, -1);
      for (std::int32_t i = 0; i < k; ++i) {
        Mask m = parts[i];
        while (m) {
          p.assignment[std::countr_zero(m)] = perm[i];
          m &= m - 1;
        }
      }
      plans.push_back(std::move(p));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return plans;
}

std::vector<Plan> all_connected_partitions_exhaustive(const AdjacencyGraph& g, std::int32_t k) {
  const NodeId n = g.node_count();
  if (n > 8) {
    throw std::invalid_argument("all_connected_partitions_exhaustive: limited to 8 nodes, got " +
                                std::to_string(n));
  }
  if (k < 1 || k > n) {
    throw std::invalid_argument(
        "all_connected_partitions_exhaustive: need 1 <= districts <= node count");
  }
  std::int64_t total = 1;
  for (NodeId i = 0; i < n; ++i) total *= k;

  std::vector<Plan> plans;
  Plan p;
  p.assignment.assign(n, 0);
  std::vector<std::vector<NodeId>> groups(k);
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t c = code;
    for (NodeId u = 0; u < n; ++u) {
      p.assignment[u] = static_cast<std::int32_t>(c % k);
      c /= k;
    }
    for (auto& members : groups) members.clear();
    for (NodeId u = 0; u < n; ++u) groups[p.assignment[u]].push_back(u);
    bool ok = true;
    for (const auto& members : groups) {
      if (members.empty() || !is_connected_subset(g, members)) {
        ok = false;
        break;
      }
    }
    if (ok) plans.push_back(p);
  }
  return plans;
}

std::optional<std::pair<Plan, std::int64_t>> brute_force_optimum(const ProblemInstance& inst) {
  // Feasibility and the score ignore labels, so searching unlabeled
  // partitions suffices and avoids the k! labeling blowup.
  const auto unlabeled = unlabeled_partitions(inst.graph(), inst.districts(), "brute_force_optimum");
  const NodeId n = inst.graph().node_count();
  std::optional<std::pair<Plan, std::int64_t>> best;
  for (const auto& parts : unlabeled) {
    Plan p = plan_from_parts(parts, n);
    if (!is_feasible(inst, p)) continue;
    const std::int64_t s = total_score_phase2_serial(inst, p);
    if (!best || s < best->second ||
        (s == best->second && p.assignment < best->first.assignment)) {
      best.emplace(std::move(p), s);
    }
  }
  return best;
}

}  // namespace districting
