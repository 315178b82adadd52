#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "multicut/instance.hpp"

namespace multicut {

// Cut of the node set into two sides, stored both as the side assignment and
// the induced cut-edge indicator (cut iff endpoints on different sides).
// side_of[0] == 0 canonically; the empty cut has all sides 0.
struct TwoColorableCut {
  std::vector<std::uint8_t> cut_edges;
  std::vector<std::uint8_t> side_of;

  friend bool operator==(const TwoColorableCut&, const TwoColorableCut&) = default;
};

// Builds the cut induced by a side assignment (normalized so side_of[0] == 0).
TwoColorableCut cut_from_sides(const EmbeddedPlanarGraph& graph,
                               std::vector<std::uint8_t> side_of);

double cut_value(const std::vector<double>& weights, const TwoColorableCut& cut);

// Exhaustive minimum-value two-colorable cut, |V| <= 20 guard. Ties resolve to
// the lexicographically smallest side_of with node 0 on side 0 (the empty cut
// when the minimum is zero).
std::pair<TwoColorableCut, double> brute_force_two_colorable_min(
    const EmbeddedPlanarGraph& graph, const std::vector<double>& weights);

// Exact minimum-value two-colorable cut for arbitrary real weights, via the
// planar dual: cuts of the graph are exactly the even-degree edge subsets of
// its dual, so the problem reduces to a minimum T-join over the negative
// edges' odd faces, solved with shortest paths plus a minimum-weight perfect
// matching. The minimum is always <= 0 (empty cut).
std::pair<TwoColorableCut, double> planar_two_colorable_min(
    const EmbeddedPlanarGraph& graph, const std::vector<double>& weights);

// One cut delta(K) per connected component K of (V, uncut edges), deduplicated
// by cut-edge indicator, ordered by each component's smallest node. A cut with
// one component yields the empty cut.
std::vector<TwoColorableCut> isolating_cuts(const EmbeddedPlanarGraph& graph,
                                            const TwoColorableCut& cut);

}  // namespace multicut
