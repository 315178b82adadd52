#pragma once

#include <optional>
#include <vector>

#include "multicut/master.hpp"

namespace multicut {

// Thresholds a fractional edge vector at each mu in the grid, repairs the
// result to a consistent multicut, and keeps the cheapest candidate that
// separates every constrained pair. Empty when no threshold separates them.
std::optional<MulticutLabeling> round_upper_bound(const ProblemInstance& instance,
                                                  const std::vector<double>& x,
                                                  const std::vector<double>& mu_grid = {0.2, 0.4,
                                                                                        0.6, 0.8});

// Certified lower bound from any nonnegative duals:
//   LB = -sum(lambda) + sum(psi) + (3/2) * min(0, min-cut value under
//   theta + lambda - S'psi).
double lower_bound(const ProblemInstance& instance, const std::vector<double>& lambda,
                   const std::vector<double>& psi, const std::vector<PathRow>& rows);

// Same bound with the oracle value already in hand.
double lower_bound_from_oracle(const std::vector<double>& lambda, const std::vector<double>& psi,
                               double oracle_value);

struct CycWitness {
  int pivot_edge = -1;          // the edge whose value exceeds the cycle detour
  std::vector<int> cycle_edges; // detour path plus the pivot edge
};

struct CycCheckResult {
  bool member = true;
  std::optional<CycWitness> witness;
};

// Checks x against every cycle inequality: for each edge e=(u,v), the
// shortest u-v distance in G - e under x must be at least x_e (up to tol).
CycCheckResult cyc_membership_check(const EmbeddedPlanarGraph& graph, const std::vector<double>& x,
                                    double tol = kTolFeas);

struct OptimalResult {
  MulticutLabeling labeling;
  double cost = 0.0;
};

// Exhaustive ground truth over all node partitions; guarded to at most 12
// nodes. Ties resolve to the lexicographically smallest edge indicator.
OptimalResult brute_force_optimal(const ProblemInstance& instance);

// (ub - lb) / |lb|, with the conventions gap(=,=) = 0 and gap over a zero
// or missing bound = infinity. Tiny negatives from roundoff clamp to zero.
double normalized_gap(double ub, double lb);

}  // namespace multicut
