#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace districting {

using NodeId = std::int32_t;

// Node-weighted undirected graph over dense node ids 0..n-1 (external
// string ids are mapped to dense ids by the io layer). Immutable after
// build_graph; safe to share across threads.
class AdjacencyGraph {
 public:
  AdjacencyGraph() = default;

  NodeId node_count() const { return static_cast<NodeId>(populations_.size()); }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(adjacency_.size()) / 2; }

  std::int64_t population(NodeId u) const;
  std::int64_t total_population() const { return total_population_; }

  // Neighbor ids, sorted and duplicate-free. Throws on out-of-range u.
  std::span<const NodeId> neighbors(NodeId u) const;
  NodeId degree(NodeId u) const { return static_cast<NodeId>(neighbors(u).size()); }

 private:
  friend AdjacencyGraph build_graph(const std::vector<std::pair<NodeId, std::int64_t>>& nodes,
                                    const std::vector<std::pair<NodeId, NodeId>>& edges);

  std::vector<std::int64_t> populations_;
  std::vector<std::int64_t> offsets_;  // CSR, size n+1
  std::vector<NodeId> adjacency_;      // size 2|E|
  std::int64_t total_population_ = 0;
};

// Nodes are (id, population) pairs whose ids together must cover
// exactly 0..n-1; edges may be listed in either orientation. Rejects
// duplicate ids, negative populations, self loops, duplicate edges and
// edges naming unknown nodes.
AdjacencyGraph build_graph(const std::vector<std::pair<NodeId, std::int64_t>>& nodes,
                           const std::vector<std::pair<NodeId, NodeId>>& edges);

// Dense all-pairs hop-count matrix. Entries are 16-bit, which bounds
// supported graphs at 65536 nodes.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  NodeId node_count() const { return n_; }
  std::uint16_t operator()(NodeId u, NodeId v) const {
    return dist_[static_cast<std::size_t>(u) * n_ + v];
  }
  std::span<const std::uint16_t> row(NodeId u) const {
    return {dist_.data() + static_cast<std::size_t>(u) * n_, static_cast<std::size_t>(n_)};
  }
  std::int64_t row_sum(NodeId u) const;

 private:
  explicit DistanceMatrix(NodeId n)
      : n_(n), dist_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {}
  friend DistanceMatrix all_pairs_distances(const AdjacencyGraph&);
  friend DistanceMatrix all_pairs_distances_serial(const AdjacencyGraph&);

  NodeId n_ = 0;
  std::vector<std::uint16_t> dist_;
};

// Hop counts from a BFS per source, always measured in the full graph.
// Throws on a disconnected graph, naming two separated nodes. The
// default version runs the per-source searches under OpenMP and
// returns exactly the serial result; the serial version is the
// reference kernel kept for tests and benchmarks.
DistanceMatrix all_pairs_distances(const AdjacencyGraph& g);
DistanceMatrix all_pairs_distances_serial(const AdjacencyGraph& g);

// True iff the subgraph induced by subset is connected. The empty set
// counts as connected; duplicates in subset are tolerated.
bool is_connected_subset(const AdjacencyGraph& g, std::span<const NodeId> subset);

bool is_connected(const AdjacencyGraph& g);

// Component node sets, largest first. Used for load-time error reports.
std::vector<std::vector<NodeId>> connected_components(const AdjacencyGraph& g);

}  // namespace districting
