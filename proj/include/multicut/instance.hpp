#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "multicut/common.hpp"

namespace multicut {

// One step of a face walk: edge `edge` traversed forward (tail->head as stored
// in `edges`) or backward.
struct FaceEntry {
  int edge = 0;
  bool forward = true;
  friend bool operator==(const FaceEntry&, const FaceEntry&) = default;
};

// Connected planar graph with an explicit combinatorial embedding given by its
// face walks. Validation enforces: no self-loops, connectivity, Euler formula
// |V| - |E| + |F| = 2, every edge traversed exactly once per orientation, and
// every face being a closed directed walk.
struct EmbeddedPlanarGraph {
  int num_nodes = 0;
  std::vector<std::pair<int, int>> edges;       // endpoint pair per edge id
  std::vector<std::vector<FaceEntry>> faces;    // face id -> closed walk

  // derived on build
  std::vector<std::vector<std::pair<int, int>>> adjacency;  // node -> (neighbor, edge)
  std::vector<std::pair<int, int>> edge_faces;  // edge -> (face of +e, face of -e)

  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_faces() const { return static_cast<int>(faces.size()); }

  // Validates and fills the derived members; throws MulticutError naming the
  // violated invariant.
  static EmbeddedPlanarGraph build(int num_nodes,
                                   std::vector<std::pair<int, int>> edges,
                                   std::vector<std::vector<FaceEntry>> faces);

  friend bool operator==(const EmbeddedPlanarGraph& a, const EmbeddedPlanarGraph& b) {
    return a.num_nodes == b.num_nodes && a.edges == b.edges && a.faces == b.faces;
  }
};

// Edge costs theta (signs mixed) plus repulsive node pairs that must end up in
// different components of any feasible multicut.
struct ProblemInstance {
  EmbeddedPlanarGraph graph;
  std::vector<double> theta;                 // one per edge
  std::vector<std::pair<int, int>> pairs;    // repulsive node pairs

  friend bool operator==(const ProblemInstance& a, const ProblemInstance& b) {
    return a.graph == b.graph && a.theta == b.theta && a.pairs == b.pairs;
  }
};

// theta split into nonnegative parts: theta = theta_pos - theta_neg_mag with
// theta_pos = max(theta, 0) and theta_neg_mag = max(-theta, 0).
struct ThetaSplit {
  std::vector<double> pos;      // theta^+
  std::vector<double> neg_mag;  // |theta^-| (nonnegative magnitudes)
};
ThetaSplit split_theta(const std::vector<double>& theta);

// Node partition together with its induced edge cut indicator; the two views
// are kept consistent (edge cut iff endpoints lie in different components).
struct MulticutLabeling {
  std::vector<std::uint8_t> edge_cut;  // one 0/1 per edge
  std::vector<int> component_of;       // one component id per node

  friend bool operator==(const MulticutLabeling&, const MulticutLabeling&) = default;
};

// Components of (V, uncut edges); component ids are assigned in order of the
// smallest node they contain. Throws if `edge_cut` is inconsistent (an uncut
// edge bridging components cannot happen; a cut edge inside one can).
MulticutLabeling labeling_from_cut(const EmbeddedPlanarGraph& graph,
                                   std::vector<std::uint8_t> edge_cut);

// Strict consistency variant used for validation: every cut edge must also
// cross components. Returns false instead of fixing anything up.
bool labeling_is_consistent(const EmbeddedPlanarGraph& graph, const MulticutLabeling& labeling);

double multicut_cost(const std::vector<double>& theta, const std::vector<std::uint8_t>& edge_cut);

// Whether every pair is separated (different components) under the labeling.
bool separates_all_pairs(const MulticutLabeling& labeling,
                         const std::vector<std::pair<int, int>>& pairs);

// -- file format --------------------------------------------------------------
//
//   nodes N edges M faces K pairs P
//   edge <id> <u> <v> <theta>
//   face <id> <signed edge tokens: +3 -0 ...>
//   pair <f1> <f2>
//
// Edge ids are 0-based; a face token's sign gives the traversal orientation
// (bare ids mean forward). Blank lines and '#' comments are permitted.
ProblemInstance parse_instance(const std::string& text);
ProblemInstance parse_instance_file(const std::string& path);
std::string serialize_instance(const ProblemInstance& instance);
void write_instance_file(const ProblemInstance& instance, const std::string& path);

// rows x cols grid with unit-square faces plus the outer face.
EmbeddedPlanarGraph make_grid_graph(int rows, int cols);

// Segmentation-like synthetic instance on a grid: a ground-truth partition is
// grown from random seeds, theta is +1 inside / -1 across its boundary plus
// noise * triangular(-2, 2) jitter, and pairs are sampled from distinct
// ground-truth regions. Deterministic in `seed`. Throws when num_pairs exceeds
// the number of available cross-region pairs.
ProblemInstance generate_synthetic(std::uint64_t seed, int rows, int cols, double noise,
                                   int num_pairs);

}  // namespace multicut
