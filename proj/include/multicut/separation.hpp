#pragma once

#include <optional>
#include <vector>

#include "multicut/master.hpp"

namespace multicut {

// Oracle edge weights w = theta + lambda - S' psi for the current duals.
std::vector<double> oracle_weights(const ProblemInstance& instance, const MasterState& state);

struct OracleOutcome {
  TwoColorableCut cut;
  double value = 0.0;     // w' z, always <= 0
  bool violating = false; // value < -tol
};

// Prices the full cut cone against the current duals via the planar oracle.
OracleOutcome find_violating_column(const ProblemInstance& instance, const MasterState& state,
                                    double tol = kTolColumn);

// Per-edge capacity of the dual-improving path search:
//   nu_e = min(theta^+_e - (S'psi)_e, min over columns r containing e of w'z_r).
std::vector<double> compute_nu(const ProblemInstance& instance, const MasterState& state);

struct PathSearchResult {
  std::vector<int> edges;  // walk order between the endpoints
  double value = 0.0;      // bottleneck width / path weight
};

// Maximum-bottleneck path over edges with nu > 0; among those, fewest hops,
// then lexicographically smallest edge ids. Returns nothing when the target
// is unreachable or the best width is not strictly positive.
std::optional<PathSearchResult> widest_path(const EmbeddedPlanarGraph& graph,
                                            const std::vector<double>& nu, int from, int to);

// Minimum-weight path under x >= 0, returned only when its weight is below
// 1 - tol (the violated path inequality).
std::optional<PathSearchResult> shortest_violated_path(const EmbeddedPlanarGraph& graph,
                                                       const std::vector<double>& x, int from,
                                                       int to, double tol = kTolPath);

}  // namespace multicut
