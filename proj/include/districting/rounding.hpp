#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "districting/graph.hpp"
#include "districting/model.hpp"

namespace districting {

// A fractional membership vector in [0,1]^{nodes x districts},
// row-major by node.
class FractionalSeed {
 public:
  FractionalSeed() = default;
  FractionalSeed(NodeId nodes, std::int32_t districts, double fill = 0.0);

  static FractionalSeed centroid(NodeId nodes, std::int32_t districts);
  static FractionalSeed indicator(const Plan& plan, std::int32_t districts);

  NodeId node_count() const { return nodes_; }
  std::int32_t district_count() const { return districts_; }

  double operator()(NodeId u, std::int32_t d) const {
    return values_[static_cast<std::size_t>(u) * districts_ + d];
  }
  double& operator()(NodeId u, std::int32_t d) {
    return values_[static_cast<std::size_t>(u) * districts_ + d];
  }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  void fill(double v);

  // Throws unless every entry lies in [0,1].
  void validate() const;

 private:
  NodeId nodes_ = 0;
  std::int32_t districts_ = 0;
  std::vector<double> values_;
};

// Maps a fractional vector to the nearest integer plan that is a
// connected partition into exactly k nonempty districts:
//
//   - while some district is empty (taken in increasing label order),
//     the unassigned node with the largest seed value in that
//     district's column claims it;
//   - afterwards, repeatedly assign the unassigned node w with the
//     largest seed value Y(w,d) among pairs where w already has a
//     neighbor inside district d.
//
// An indicator of a connected partition with k nonempty districts
// rounds to itself. Ties break to the lower node id, then the lower
// district label; pass tie_rng to break them uniformly at random
// instead. Requires |V| >= k and a connected graph.
Plan round_to_plan(const FractionalSeed& seed, const AdjacencyGraph& g, std::int32_t k,
                   std::mt19937_64* tie_rng = nullptr);

}  // namespace districting
