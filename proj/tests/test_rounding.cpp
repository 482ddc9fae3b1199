#include <doctest.h>

#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "districting/rounding.hpp"
#include "support.hpp"

using namespace districting;
namespace dt = districting::testing;

namespace {

FractionalSeed seed_from_rows(const std::vector<std::vector<double>>& rows) {
  FractionalSeed s(static_cast<NodeId>(rows.size()),
                   static_cast<std::int32_t>(rows.front().size()));
  for (NodeId u = 0; u < s.node_count(); ++u) {
    for (std::int32_t d = 0; d < s.district_count(); ++d) s(u, d) = rows[u][d];
  }
  return s;
}

}  // namespace

TEST_CASE("fractional seed container") {
  FractionalSeed s(3, 2, 0.25);
  CHECK(s.node_count() == 3);
  CHECK(s.district_count() == 2);
  CHECK(s(2, 1) == 0.25);
  s(2, 1) = 0.75;
  CHECK(s(2, 1) == 0.75);
  CHECK(s.values().size() == 6);
  s.fill(0.5);
  CHECK(s(0, 0) == 0.5);

  const FractionalSeed c = FractionalSeed::centroid(4, 3);
  for (double v : c.values()) CHECK(v == 0.5);

  CHECK_NOTHROW(s.validate());
  s(1, 0) = 1.5;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s(1, 0) = -0.001;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);

  CHECK_THROWS_AS(FractionalSeed(-1, 2), std::invalid_argument);
  CHECK_THROWS_AS(FractionalSeed(3, 0), std::invalid_argument);
}

TEST_CASE("indicator seeds") {
  const FractionalSeed ind = FractionalSeed::indicator(Plan{{0, 1, 1}}, 2);
  CHECK(ind(0, 0) == 1.0);
  CHECK(ind(0, 1) == 0.0);
  CHECK(ind(1, 1) == 1.0);
  CHECK(ind(2, 0) == 0.0);
  CHECK_THROWS_AS(FractionalSeed::indicator(Plan{{0, 2, 1}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(FractionalSeed::indicator(Plan{{0, -1}}, 2), std::invalid_argument);
}

TEST_CASE("rounding walkthrough on a path") {
  // district 0 claims node 0 (largest first column), district 1 claims
  // node 2, then node 1 joins district 1 because 0.3 > 0.2
  const FractionalSeed seed = seed_from_rows({{0.9, 0.1}, {0.2, 0.3}, {0.1, 0.8}});
  const Plan plan = round_to_plan(seed, dt::p3_graph(), 2);
  CHECK(plan.assignment == std::vector<std::int32_t>{0, 1, 1});
}

TEST_CASE("rounding walkthrough on a five-node tree") {
  // star-ish tree: 1 is adjacent to 0, 2 and 3; 4 hangs off 3.
  const AdjacencyGraph g = build_graph(
      {{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}},
      {{0, 1}, {1, 3}, {3, 4}, {1, 2}});
  const FractionalSeed seed = seed_from_rows({
      {0.80, 0.10},
      {0.55, 0.68},
      {0.30, 0.66},
      {0.15, 0.90},
      {0.20, 0.60},
  });
  // claims: node 0 -> district 0, node 3 -> district 1; then the
  // frontier maxima run 0.68, 0.66, 0.60, all in district 1
  const Plan plan = round_to_plan(seed, g, 2);
  CHECK(plan.assignment == std::vector<std::int32_t>{0, 1, 1, 1, 1});
}

TEST_CASE("deterministic tie breaking favors low node then low district") {
  const Plan plan = round_to_plan(FractionalSeed::centroid(3, 2), dt::p3_graph(), 2);
  CHECK(plan.assignment == std::vector<std::int32_t>{0, 1, 1});
}

TEST_CASE("randomized tie breaking reaches every claimant") {
  std::mt19937_64 tie_rng(11);
  std::set<std::vector<std::int32_t>> plans;
  std::set<NodeId> district0_members;
  for (int rep = 0; rep < 300; ++rep) {
    const Plan plan = round_to_plan(FractionalSeed::centroid(3, 2), dt::p3_graph(), 2, &tie_rng);
    REQUIRE(dt::valid_partition(dt::p3_graph(), plan, 2));
    plans.insert(plan.assignment);
    for (NodeId u = 0; u < 3; ++u) {
      if (plan.assignment[u] == 0) district0_members.insert(u);
    }
  }
  CHECK(plans.size() >= 3);
  CHECK(district0_members == std::set<NodeId>{0, 1, 2});
}

TEST_CASE("indicators of connected partitions are fixed points") {
  std::mt19937_64 rng(606);
  for (int rep = 0; rep < 200; ++rep) {
    const NodeId n = 4 + static_cast<NodeId>(dt::pick(rng, 27));
    const std::int32_t k = 2 + static_cast<std::int32_t>(dt::pick(rng, 3));
    if (k > n) continue;
    const AdjacencyGraph g = dt::random_connected_graph(rng, n);
    const Plan plan = dt::random_connected_partition(rng, g, k);
    const Plan rounded = round_to_plan(FractionalSeed::indicator(plan, k), g, k);
    REQUIRE(rounded == plan);
  }
}

TEST_CASE("random seeds always round to valid partitions") {
  std::mt19937_64 rng(808);
  for (int rep = 0; rep < 500; ++rep) {
    const NodeId n = 2 + static_cast<NodeId>(dt::pick(rng, 24));
    const std::int32_t k = 1 + static_cast<std::int32_t>(dt::pick(rng, 4));
    if (k > n) continue;
    const AdjacencyGraph g = dt::random_connected_graph(rng, n);
    FractionalSeed seed(n, k);
    for (double& v : seed.values()) v = u01(rng);
    const Plan plan = round_to_plan(seed, g, k);
    REQUIRE(dt::valid_partition(g, plan, k));
  }
}

TEST_CASE("rounding is deterministic without a tie source") {
  std::mt19937_64 rng(123);
  const AdjacencyGraph g = dt::random_connected_graph(rng, 20);
  FractionalSeed seed(20, 3);
  for (double& v : seed.values()) v = u01(rng);
  const Plan a = round_to_plan(seed, g, 3);
  const Plan b = round_to_plan(seed, g, 3);
  CHECK(a == b);
}

TEST_CASE("rounding rejects bad inputs") {
  const AdjacencyGraph g = dt::p3_graph();
  CHECK_THROWS_AS(round_to_plan(FractionalSeed::centroid(3, 2), g, 0), std::invalid_argument);
  CHECK_THROWS_AS(round_to_plan(FractionalSeed::centroid(3, 4), g, 4), std::invalid_argument);
  CHECK_THROWS_AS(round_to_plan(FractionalSeed::centroid(2, 2), g, 2), std::invalid_argument);
  CHECK_THROWS_AS(round_to_plan(FractionalSeed::centroid(3, 3), g, 2), std::invalid_argument);

  // both initial claims land in one component of a split graph, the
  // other component can never be reached
  const AdjacencyGraph split =
      build_graph({{0, 1}, {1, 1}, {2, 1}, {3, 1}}, {{0, 1}, {2, 3}});
  const FractionalSeed stranded = seed_from_rows({
      {0.9, 0.1},
      {0.1, 0.9},
      {0.0, 0.0},
      {0.0, 0.0},
  });
  CHECK_THROWS_WITH_AS(round_to_plan(stranded, split, 2),
                       "round_to_plan: no assignable node adjacent to any district; "
                       "graph must be connected",
                       std::runtime_error);
}
