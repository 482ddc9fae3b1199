#pragma once

// Shared fixtures and independent reference implementations for the
// test binaries. Everything here is deliberately written from the
// definitions, not by calling the library code under test.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "districting/graph.hpp"
#include "districting/model.hpp"
#include "districting/rng.hpp"

namespace districting::testing {

inline std::int64_t pick(std::mt19937_64& rng, std::int64_t bound) {
  const auto v = static_cast<std::int64_t>(u01(rng) * static_cast<double>(bound));
  return std::min(v, bound - 1);
}

// Random spanning tree plus a few extra edges; always connected.
inline AdjacencyGraph random_connected_graph(std::mt19937_64& rng, NodeId n,
                                             std::int64_t pop_min = 1, std::int64_t pop_max = 20,
                                             double extra_edge_factor = 0.5) {
  std::vector<std::pair<NodeId, std::int64_t>> nodes;
  for (NodeId u = 0; u < n; ++u) {
    nodes.emplace_back(u, pop_min + pick(rng, pop_max - pop_min + 1));
  }
  std::set<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 1; u < n; ++u) {
    edges.insert({static_cast<NodeId>(pick(rng, u)), u});
  }
  const auto extra = static_cast<std::int64_t>(extra_edge_factor * n);
  for (std::int64_t i = 0; i < extra && n >= 2; ++i) {
    const auto a = static_cast<NodeId>(pick(rng, n));
    const auto b = static_cast<NodeId>(pick(rng, n));
    if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
  }
  return build_graph(nodes, {edges.begin(), edges.end()});
}

// Random partition into k nonempty connected districts, grown from k
// random start nodes one random frontier step at a time.
inline Plan random_connected_partition(std::mt19937_64& rng, const AdjacencyGraph& g,
                                       std::int32_t k) {
  const NodeId n = g.node_count();
  Plan plan;
  plan.assignment.assign(n, -1);
  std::vector<NodeId> order(n);
  for (NodeId u = 0; u < n; ++u) order[u] = u;
  for (NodeId u = n - 1; u > 0; --u) {
    std::swap(order[u], order[pick(rng, u + 1)]);
  }
  for (std::int32_t d = 0; d < k; ++d) plan.assignment[order[d]] = d;
  NodeId assigned = k;
  std::vector<std::pair<NodeId, std::int32_t>> frontier;
  while (assigned < n) {
    frontier.clear();
    for (NodeId u = 0; u < n; ++u) {
      if (plan.assignment[u] >= 0) continue;
      for (const NodeId v : g.neighbors(u)) {
        if (plan.assignment[v] >= 0) frontier.emplace_back(u, plan.assignment[v]);
      }
    }
    const auto& [u, d] = frontier[pick(rng, static_cast<std::int64_t>(frontier.size()))];
    plan.assignment[u] = d;
    ++assigned;
  }
  return plan;
}

// Reference all-pairs distances by Floyd-Warshall, unrelated to the
// BFS implementation under test.
inline std::vector<std::vector<std::int32_t>> floyd_warshall(const AdjacencyGraph& g) {
  const NodeId n = g.node_count();
  constexpr std::int32_t kInf = 1 << 29;
  std::vector<std::vector<std::int32_t>> dist(n, std::vector<std::int32_t>(n, kInf));
  for (NodeId u = 0; u < n; ++u) {
    dist[u][u] = 0;
    for (const NodeId v : g.neighbors(u)) dist[u][v] = 1;
  }
  for (NodeId m = 0; m < n; ++m) {
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = 0; v < n; ++v) {
        dist[u][v] = std::min(dist[u][v], dist[u][m] + dist[m][v]);
      }
    }
  }
  return dist;
}

// Center and score straight from the definition: the member node (ties
// to the lowest id) minimizing the summed distances to all members.
inline std::pair<NodeId, std::int64_t> center_by_definition(
    const std::vector<std::vector<std::int32_t>>& dist, std::vector<NodeId> members) {
  std::sort(members.begin(), members.end());
  NodeId center = -1;
  std::int64_t best = 0;
  for (const NodeId c : members) {
    std::int64_t sum = 0;
    for (const NodeId m : members) sum += dist[c][m];
    if (center < 0 || sum < best) {
      center = c;
      best = sum;
    }
  }
  return {center, best};
}

inline AdjacencyGraph p3_graph() {
  return build_graph({{0, 10}, {1, 20}, {2, 30}}, {{0, 1}, {1, 2}});
}

inline AdjacencyGraph grid_graph(std::int32_t rows, std::int32_t cols, std::int64_t pop = 1) {
  std::vector<std::pair<NodeId, std::int64_t>> nodes;
  std::vector<std::pair<NodeId, NodeId>> edges;
  const auto id = [cols](std::int32_t r, std::int32_t c) {
    return static_cast<NodeId>(r * cols + c);
  };
  for (std::int32_t r = 0; r < rows; ++r) {
    for (std::int32_t c = 0; c < cols; ++c) {
      nodes.emplace_back(id(r, c), pop);
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  return build_graph(nodes, edges);
}

// True iff the plan uses every label in 0..k-1 and every district
// induces a connected subgraph; checked from first principles.
inline bool valid_partition(const AdjacencyGraph& g, const Plan& plan, std::int32_t k) {
  if (static_cast<NodeId>(plan.assignment.size()) != g.node_count()) return false;
  std::vector<std::vector<NodeId>> groups(k);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const std::int32_t d = plan.assignment[u];
    if (d < 0 || d >= k) return false;
    groups[d].push_back(u);
  }
  for (const auto& members : groups) {
    if (members.empty() || !is_connected_subset(g, members)) return false;
  }
  return true;
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<std::uint64_t> counter{0};
    const auto stamp =
        std::chrono::steady_clock::now().time_since_epoch().count() ^ (counter++ << 20);
    path_ = std::filesystem::temp_directory_path() /
            ("districting_test_" + std::to_string(static_cast<std::uint64_t>(stamp)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream stream(path, std::ios::binary);
  stream << content;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream stream(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(stream), std::istreambuf_iterator<char>()};
}

}  // namespace districting::testing
