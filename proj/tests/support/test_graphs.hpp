// Shared test fixtures and exhaustive reference helpers:
//   - the C4 four-cycle fixture used throughout the examples
//   - random planar graphs built by deleting non-bridge edges from grids
//     (the two faces beside the edge merge into one, keeping the embedding valid)
//   - brute-force enumeration of matchings, simple paths, and simple cycles
#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "multicut/instance.hpp"
#include "multicut/matching.hpp"

namespace multicut::testing {

// -- C4 fixture: nodes 0..3, edges e0=(0,1) e1=(1,2) e2=(2,3) e3=(3,0) -------

inline EmbeddedPlanarGraph c4_graph() {
  std::vector<std::pair<int, int>> edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  std::vector<std::vector<FaceEntry>> faces = {
      {{0, true}, {1, true}, {2, true}, {3, true}},
      {{3, false}, {2, false}, {1, false}, {0, false}},
  };
  return EmbeddedPlanarGraph::build(4, edges, faces);
}

inline ProblemInstance c4_instance(std::vector<double> theta,
                                   std::vector<std::pair<int, int>> pairs = {}) {
  ProblemInstance instance;
  instance.graph = c4_graph();
  instance.theta = std::move(theta);
  instance.pairs = std::move(pairs);
  return instance;
}

// -- random planar graphs -----------------------------------------------------

struct ScratchGraph {
  int num_nodes = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<FaceEntry>> faces;
};

inline ScratchGraph scratch_from(const EmbeddedPlanarGraph& graph) {
  return {graph.num_nodes, graph.edges, graph.faces};
}

// The two face slots of an edge, by scanning the face walks.
inline std::pair<int, int> face_slots(const ScratchGraph& g, int edge) {
  int fa = -1, fb = -1;
  for (std::size_t f = 0; f < g.faces.size(); ++f) {
    for (const FaceEntry& fe : g.faces[f]) {
      if (fe.edge != edge) continue;
      if (fa < 0) {
        fa = static_cast<int>(f);
      } else {
        fb = static_cast<int>(f);
      }
    }
  }
  return {fa, fb};
}

// Deletes a non-bridge edge, merging its two distinct faces into one closed
// walk; returns false when the edge borders the same face on both sides.
inline bool delete_nonbridge_edge(ScratchGraph& g, int del) {
  auto [fa, fb] = face_slots(g, del);
  if (fa < 0 || fb < 0 || fa == fb) return false;

  auto walk_after = [&](int f, int skip_edge) {
    const auto& face = g.faces[f];
    const int s = static_cast<int>(face.size());
    int at = -1;
    for (int i = 0; i < s; ++i) {
      if (face[i].edge == skip_edge) at = i;
    }
    std::vector<FaceEntry> walk;
    for (int k = 1; k < s; ++k) walk.push_back(face[(at + k) % s]);
    return walk;
  };

  // Walk A runs from where fa's traversal of `del` ends back to where it
  // starts; walk B covers the opposite direction. Concatenated they close.
  std::vector<FaceEntry> merged = walk_after(fa, del);
  std::vector<FaceEntry> tail = walk_after(fb, del);
  merged.insert(merged.end(), tail.begin(), tail.end());

  if (fa > fb) std::swap(fa, fb);
  g.faces.erase(g.faces.begin() + fb);
  g.faces.erase(g.faces.begin() + fa);
  g.faces.push_back(std::move(merged));

  g.edges.erase(g.edges.begin() + del);
  for (auto& face : g.faces) {
    for (auto& fe : face) {
      if (fe.edge > del) --fe.edge;
    }
  }
  return true;
}

// Grid minus `deletions` random non-bridge edges; always a valid embedding.
inline EmbeddedPlanarGraph random_planar_graph(Rng& rng, int rows, int cols, int deletions) {
  ScratchGraph g = scratch_from(make_grid_graph(rows, cols));
  for (int d = 0; d < deletions; ++d) {
    std::vector<int> candidates;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
      auto [fa, fb] = face_slots(g, e);
      if (fa >= 0 && fb >= 0 && fa != fb) candidates.push_back(e);
    }
    if (candidates.empty()) break;
    const int pick = candidates[rng.uniform_int(0, static_cast<int>(candidates.size()) - 1)];
    delete_nonbridge_edge(g, pick);
  }
  return EmbeddedPlanarGraph::build(g.num_nodes, g.edges, g.faces);
}

inline std::vector<double> random_integer_weights(Rng& rng, int count, int lo, int hi) {
  std::vector<double> w(count);
  for (double& v : w) v = rng.uniform_int(lo, hi);
  return w;
}

inline std::vector<double> random_real_weights(Rng& rng, int count, double lo, double hi) {
  std::vector<double> w(count);
  for (double& v : w) v = rng.uniform_real(lo, hi);
  return w;
}

// Distinct node pairs sampled without replacement.
inline std::vector<std::pair<int, int>> random_pairs(Rng& rng, int num_nodes, int count) {
  std::vector<std::pair<int, int>> all;
  for (int a = 0; a < num_nodes; ++a) {
    for (int b = a + 1; b < num_nodes; ++b) all.emplace_back(a, b);
  }
  std::vector<std::pair<int, int>> out;
  const int take = std::min<int>(count, static_cast<int>(all.size()));
  for (int i = 0; i < take; ++i) {
    const int j = rng.uniform_int(i, static_cast<int>(all.size()) - 1);
    std::swap(all[i], all[j]);
    out.push_back(all[i]);
  }
  return out;
}

// -- exhaustive references ----------------------------------------------------

// Minimum perfect-matching cost by enumeration; nullopt when none exists.
inline std::optional<double> brute_min_perfect_matching(const WeightedMatchingProblem& problem) {
  const int n = problem.num_vertices;
  if (n % 2 != 0) return std::nullopt;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, kInf));
  for (const auto& e : problem.edges) {
    if (e.u == e.v) continue;
    cost[e.u][e.v] = std::min(cost[e.u][e.v], e.cost);
    cost[e.v][e.u] = std::min(cost[e.v][e.u], e.cost);
  }
  std::vector<bool> used(n, false);
  double best = kInf;
  auto rec = [&](auto&& self, double acc) -> void {
    int u = -1;
    for (int i = 0; i < n; ++i) {
      if (!used[i]) {
        u = i;
        break;
      }
    }
    if (u < 0) {
      best = std::min(best, acc);
      return;
    }
    used[u] = true;
    for (int v = u + 1; v < n; ++v) {
      if (used[v] || cost[u][v] == kInf) continue;
      used[v] = true;
      self(self, acc + cost[u][v]);
      used[v] = false;
    }
    used[u] = false;
  };
  rec(rec, 0.0);
  if (best == kInf) return std::nullopt;
  return best;
}

// Every simple path from `a` to `b` as an edge-id sequence.
inline std::vector<std::vector<int>> all_simple_paths(const EmbeddedPlanarGraph& graph, int a,
                                                      int b) {
  std::vector<std::vector<int>> out;
  std::vector<bool> visited(graph.num_nodes, false);
  std::vector<int> path;
  auto rec = [&](auto&& self, int u) -> void {
    if (u == b) {
      out.push_back(path);
      return;
    }
    visited[u] = true;
    for (auto [v, e] : graph.adjacency[u]) {
      if (visited[v]) continue;
      path.push_back(e);
      self(self, v);
      path.pop_back();
    }
    visited[u] = false;
  };
  rec(rec, a);
  return out;
}

// Every simple cycle as a sorted edge-id set (deduplicated).
inline std::vector<std::vector<int>> all_simple_cycles(const EmbeddedPlanarGraph& graph) {
  std::set<std::vector<int>> seen;
  for (int e = 0; e < graph.num_edges(); ++e) {
    const auto [u, v] = graph.edges[e];
    std::vector<bool> visited(graph.num_nodes, false);
    std::vector<int> path;
    auto rec = [&](auto&& self, int at) -> void {
      if (at == v) {
        std::vector<int> cyc = path;
        cyc.push_back(e);
        std::sort(cyc.begin(), cyc.end());
        seen.insert(std::move(cyc));
        return;
      }
      visited[at] = true;
      for (auto [w, f] : graph.adjacency[at]) {
        if (f == e || visited[w]) continue;
        path.push_back(f);
        self(self, w);
        path.pop_back();
      }
      visited[at] = false;
    };
    rec(rec, u);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace multicut::testing
