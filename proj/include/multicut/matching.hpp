#pragma once

#include <utility>
#include <vector>

#include "multicut/common.hpp"

namespace multicut {

struct WeightedMatchingProblem {
  int num_vertices = 0;
  struct Edge {
    int u = 0;
    int v = 0;
    double cost = 0.0;
  };
  std::vector<Edge> edges;
};

struct MatchingResult {
  std::vector<std::pair<int, int>> pairs;  // matched pairs (u < v), sorted
  std::vector<int> mate;                   // partner per vertex
  double cost = 0.0;
};

// Exact minimum-weight perfect matching on a general graph via the primal-dual
// blossom algorithm. Costs may be negative; parallel edges collapse to the
// cheapest one; self-loops are ignored. Throws MulticutError when the graph
// admits no perfect matching.
MatchingResult min_weight_perfect_matching(const WeightedMatchingProblem& problem);

}  // namespace multicut
