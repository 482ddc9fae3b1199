#include "districting/graph.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>
#include <string>

namespace districting {

namespace {

void check_node(const AdjacencyGraph& g, NodeId u, const char* what) {
  if (u < 0 || u >= g.node_count()) {
    throw std::out_of_range(std::string(what) + ": node id " + std::to_string(u) +
                            " out of range [0, " + std::to_string(g.node_count()) + ")");
  }
}

constexpr std::uint16_t kUnreached = 0xffff;

// Fills row with hop counts from src; returns the number of nodes reached.
NodeId bfs_row(const AdjacencyGraph& g, NodeId src, std::uint16_t* row,
               std::vector<NodeId>& queue) {
  const NodeId n = g.node_count();
  std::memset(row, 0xff, static_cast<std::size_t>(n) * sizeof(std::uint16_t));
  queue.clear();
  queue.push_back(src);
  row[src] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    const std::uint16_t du = row[u];
    for (NodeId v : g.neighbors(u)) {
      if (row[v] == kUnreached) {
        row[v] = static_cast<std::uint16_t>(du + 1);
        queue.push_back(v);
      }
    }
  }
  return static_cast<NodeId>(queue.size());
}

void check_apsp_preconditions(const AdjacencyGraph& g) {
  const NodeId n = g.node_count();
  if (n == 0) throw std::invalid_argument("all_pairs_distances: empty graph");
  if (n > 65536) {
    throw std::invalid_argument("all_pairs_distances: " + std::to_string(n) +
                                " nodes exceed the 16-bit distance limit of 65536");
  }
  // One BFS up front so a disconnected input fails with a named pair
  // before the full matrix is touched.
  std::vector<std::uint16_t> row(n);
  std::vector<NodeId> queue;
  queue.reserve(n);
  if (bfs_row(g, 0, row.data(), queue) != n) {
    NodeId missing = 0;
    for (NodeId v = 0; v < n; ++v) {
      if (row[v] == kUnreached) {
        missing = v;
        break;
      }
    }
    throw std::invalid_argument("graph is disconnected: no path between nodes 0 and " +
                                std::to_string(missing));
  }
}

}  // namespace

std::int64_t AdjacencyGraph::population(NodeId u) const {
  check_node(*this, u, "population");
  return populations_[u];
}

std::span<const NodeId> AdjacencyGraph::neighbors(NodeId u) const {
  check_node(*this, u, "neighbors");
  return {adjacency_.data() + offsets_[u], static_cast<std::size_t>(offsets_[u + 1] - offsets_[u])};
}

AdjacencyGraph build_graph(const std::vector<std::pair<NodeId, std::int64_t>>& nodes,
                           const std::vector<std::pair<NodeId, NodeId>>& edges) {
  const NodeId n = static_cast<NodeId>(nodes.size());
  AdjacencyGraph g;
  g.populations_.assign(n, -1);
  for (const auto& [id, pop] : nodes) {
    if (id < 0 || id >= n) {
      throw std::invalid_argument("build_graph: node id " + std::to_string(id) +
                                  " outside dense range [0, " + std::to_string(n) + ")");
    }
    if (g.populations_[id] >= 0) {
      throw std::invalid_argument("build_graph: duplicate node id " + std::to_string(id));
    }
    if (pop < 0) {
      throw std::invalid_argument("build_graph: negative population for node " +
                                  std::to_string(id));
    }
    g.populations_[id] = pop;
    g.total_population_ += pop;
  }

  std::vector<NodeId> degree(n, 0);
  for (const auto& [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw std::invalid_argument("build_graph: edge (" + std::to_string(a) + ", " +
                                  std::to_string(b) + ") references an unknown node");
    }
    if (a == b) {
      throw std::invalid_argument("build_graph: self-loop on node " + std::to_string(a));
    }
    ++degree[a];
    ++degree[b];
  }
  g.offsets_.assign(n + 1, 0);
  for (NodeId u = 0; u < n; ++u) g.offsets_[u + 1] = g.offsets_[u] + degree[u];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [a, b] : edges) {
    g.adjacency_[cursor[a]++] = b;
    g.adjacency_[cursor[b]++] = a;
  }
  for (NodeId u = 0; u < n; ++u) {
    auto begin = g.adjacency_.begin() + g.offsets_[u];
    auto end = g.adjacency_.begin() + g.offsets_[u + 1];
    std::sort(begin, end);
    auto dup = std::adjacent_find(begin, end);
    if (dup != end) {
      throw std::invalid_argument("build_graph: duplicate edge (" + std::to_string(u) + ", " +
                                  std::to_string(*dup) + ")");
    }
  }
  return g;
}

std::int64_t DistanceMatrix::row_sum(NodeId u) const {
  std::int64_t sum = 0;
  for (std::uint16_t d : row(u)) sum += d;
  return sum;
}

DistanceMatrix all_pairs_distances_serial(const AdjacencyGraph& g) {
  check_apsp_preconditions(g);
  const NodeId n = g.node_count();
  DistanceMatrix m(n);
  std::vector<NodeId> queue;
  queue.reserve(n);
  for (NodeId src = 0; src < n; ++src) {
    bfs_row(g, src, m.dist_.data() + static_cast<std::size_t>(src) * n, queue);
  }
  return m;
}

DistanceMatrix all_pairs_distances(const AdjacencyGraph& g) {
  check_apsp_preconditions(g);
  const NodeId n = g.node_count();
  DistanceMatrix m(n);
#pragma omp parallel
  {
    std::vector<NodeId> queue;
    queue.reserve(n);
#pragma omp for schedule(dynamic, 64)
    for (NodeId src = 0; src < n; ++src) {
      bfs_row(g, src, m.dist_.data() + static_cast<std::size_t>(src) * n, queue);
    }
  }
  return m;
}

bool is_connected_subset(const AdjacencyGraph& g, std::span<const NodeId> subset) {
  if (subset.empty()) return true;
  const NodeId n = g.node_count();
  std::vector<std::uint8_t> in_subset(n, 0);
  NodeId distinct = 0;
  for (NodeId u : subset) {
    check_node(g, u, "is_connected_subset");
    if (!in_subset[u]) {
      in_subset[u] = 1;
      ++distinct;
    }
  }
  std::vector<NodeId> stack{subset.front()};
  in_subset[subset.front()] = 2;  // 2 = visited
  NodeId reached = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : g.neighbors(u)) {
      if (in_subset[v] == 1) {
        in_subset[v] = 2;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == distinct;
}

bool is_connected(const AdjacencyGraph& g) {
  const NodeId n = g.node_count();
  if (n == 0) return true;
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  NodeId reached = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : g.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n;
}

std::vector<std::vector<NodeId>> connected_components(const AdjacencyGraph& g) {
  const NodeId n = g.node_count();
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::vector<NodeId>> components;
  std::vector<NodeId> stack;
  for (NodeId start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<NodeId> component;
    stack.assign(1, start);
    seen[start] = 1;
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      component.push_back(u);
      for (NodeId v : g.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return components;
}

}  // namespace districting
