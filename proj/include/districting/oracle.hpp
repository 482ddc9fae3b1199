#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "districting/graph.hpp"
#include "districting/model.hpp"

namespace districting {

// Every labeled partition of the graph into k nonempty connected
// districts: anchored enumeration of connected parts expanded by the
// k! labelings. Bitmask state limits it to 16 nodes.
std::vector<Plan> all_connected_partitions(const AdjacencyGraph& g, std::int32_t k);

// The same set of plans obtained by filtering all k^n assignments.
// Deliberately shares no code with the enumeration above; kept as a
// cross-check. Limited to 8 nodes.
std::vector<Plan> all_connected_partitions_exhaustive(const AdjacencyGraph& g, std::int32_t k);

// Exact optimum by enumeration: a feasible plan minimizing the total
// gerrymander score and that score, or nullopt when no feasible plan
// exists. Districts are labeled in order of first appearance by node
// id; score ties go to the lexicographically smallest assignment.
std::optional<std::pair<Plan, std::int64_t>> brute_force_optimum(const ProblemInstance& inst);

}  // namespace districting
