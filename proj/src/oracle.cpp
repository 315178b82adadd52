#include "multicut/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

#include "multicut/matching.hpp"

namespace multicut {

TwoColorableCut cut_from_sides(const EmbeddedPlanarGraph& graph,
                               std::vector<std::uint8_t> side_of) {
  if (static_cast<int>(side_of.size()) != graph.num_nodes)
    throw MulticutError("side assignment size does not match node count");
  if (side_of[0] != 0)
    for (auto& s : side_of) s ^= 1;
  TwoColorableCut cut;
  cut.side_of = std::move(side_of);
  cut.cut_edges.resize(graph.num_edges());
  for (int e = 0; e < graph.num_edges(); ++e)
    cut.cut_edges[e] = cut.side_of[graph.edges[e].first] != cut.side_of[graph.edges[e].second];
  return cut;
}

double cut_value(const std::vector<double>& weights, const TwoColorableCut& cut) {
  double value = 0.0;
  for (size_t e = 0; e < weights.size(); ++e)
    if (cut.cut_edges[e]) value += weights[e];
  return value;
}

std::pair<TwoColorableCut, double> brute_force_two_colorable_min(
    const EmbeddedPlanarGraph& graph, const std::vector<double>& weights) {
  const int n = graph.num_nodes;
  if (n > 20) throw MulticutError("brute force limited to 20 nodes");
  if (static_cast<int>(weights.size()) != graph.num_edges())
    throw MulticutError("weight vector size does not match edge count");

  std::vector<std::uint8_t> sides(n, 0);
  TwoColorableCut best = cut_from_sides(graph, sides);
  double best_value = 0.0;
  // node 0 stays on side 0; enumerate sides of nodes 1..n-1 so that the scan
  // order coincides with lexicographic order of side_of
  const std::uint64_t limit = 1ULL << (n - 1);
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    for (int v = 1; v < n; ++v) sides[v] = (mask >> (n - 1 - v)) & 1;
    double value = 0.0;
    for (int e = 0; e < graph.num_edges(); ++e)
      if (sides[graph.edges[e].first] != sides[graph.edges[e].second]) value += weights[e];
    if (value < best_value - 1e-15) {
      best_value = value;
      best = cut_from_sides(graph, sides);
    }
  }
  return {best, best_value};
}

namespace {

// Recovers a side assignment whose induced cut equals `cut_edges`: BFS over
// all edges, flipping sides across cut edges. A parity clash means the
// indicator is not a two-colorable cut at all.
TwoColorableCut witness_sides(const EmbeddedPlanarGraph& graph,
                              const std::vector<std::uint8_t>& cut_edges) {
  std::vector<std::uint8_t> side(graph.num_nodes, 0);
  std::vector<char> seen(graph.num_nodes, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (auto [v, e] : graph.adjacency[u]) {
      std::uint8_t want = side[u] ^ cut_edges[e];
      if (!seen[v]) {
        seen[v] = 1;
        side[v] = want;
        stack.push_back(v);
      } else if (side[v] != want) {
        throw MulticutError("oracle internal error: edge set is not a cut");
      }
    }
  }
  TwoColorableCut cut = cut_from_sides(graph, std::move(side));
  if (cut.cut_edges != cut_edges)
    throw MulticutError("oracle internal error: witness mismatch");
  return cut;
}

}  // namespace

std::pair<TwoColorableCut, double> planar_two_colorable_min(
    const EmbeddedPlanarGraph& graph, const std::vector<double>& weights) {
  const int m = graph.num_edges();
  if (static_cast<int>(weights.size()) != m)
    throw MulticutError("weight vector size does not match edge count");
  const int nf = graph.num_faces();

  // Negative edges taken as the starting even-subgraph candidate; T collects
  // the dual vertices (faces) where that candidate has odd degree. Self-loops
  // in the dual (bridges) touch one face twice and never create odd degree.
  std::vector<std::uint8_t> in_set(m, 0);
  std::vector<int> deg(nf, 0);
  double base = 0.0;
  for (int e = 0; e < m; ++e) {
    if (weights[e] < 0.0) {
      in_set[e] = 1;
      base += weights[e];
      auto [fa, fb] = graph.edge_faces[e];
      ++deg[fa];
      ++deg[fb];
    }
  }
  std::vector<int> terminals;
  for (int f = 0; f < nf; ++f)
    if (deg[f] % 2 == 1) terminals.push_back(f);

  double total = base;
  if (!terminals.empty()) {
    // dual adjacency under |w|; self-loops are useless for shortest paths
    std::vector<std::vector<std::pair<int, int>>> dual_adj(nf);
    for (int e = 0; e < m; ++e) {
      auto [fa, fb] = graph.edge_faces[e];
      if (fa == fb) continue;
      dual_adj[fa].emplace_back(fb, e);
      dual_adj[fb].emplace_back(fa, e);
    }

    const int t = static_cast<int>(terminals.size());
    std::vector<std::vector<double>> dist(t);
    std::vector<std::vector<int>> parent_edge(t);
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (int i = 0; i < t; ++i) {
      dist[i].assign(nf, inf);
      parent_edge[i].assign(nf, -1);
      using Item = std::pair<double, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
      dist[i][terminals[i]] = 0.0;
      pq.emplace(0.0, terminals[i]);
      while (!pq.empty()) {
        auto [d, f] = pq.top();
        pq.pop();
        if (d > dist[i][f]) continue;
        for (auto [g, e] : dual_adj[f]) {
          double nd = d + std::abs(weights[e]);
          if (nd < dist[i][g]) {
            dist[i][g] = nd;
            parent_edge[i][g] = e;
            pq.emplace(nd, g);
          }
        }
      }
    }

    WeightedMatchingProblem mp;
    mp.num_vertices = t;
    for (int i = 0; i < t; ++i)
      for (int j = i + 1; j < t; ++j) {
        if (dist[i][terminals[j]] == inf)
          throw MulticutError("oracle internal error: dual graph disconnected");
        mp.edges.push_back({i, j, dist[i][terminals[j]]});
      }
    MatchingResult matching = min_weight_perfect_matching(mp);

    // toggle each matched shortest path; edges used an even number of times
    // cancel, which only ever lowers the (already optimal) total
    std::vector<int> use(m, 0);
    for (auto [i, j] : matching.pairs) {
      int f = terminals[j];
      while (f != terminals[i]) {
        int e = parent_edge[i][f];
        ++use[e];
        auto [fa, fb] = graph.edge_faces[e];
        f = f == fa ? fb : fa;
      }
    }
    for (int e = 0; e < m; ++e)
      if (use[e] % 2 == 1) in_set[e] ^= 1;
    total = 0.0;
    for (int e = 0; e < m; ++e)
      if (in_set[e]) total += weights[e];
    double predicted = base + matching.cost;
    double scale = std::max(1.0, std::abs(total));
    if (std::abs(total - predicted) > 1e-7 * scale)
      throw MulticutError("oracle internal error: join cost mismatch");
  }

  TwoColorableCut cut = witness_sides(graph, in_set);
  return {cut, total};
}

std::vector<TwoColorableCut> isolating_cuts(const EmbeddedPlanarGraph& graph,
                                            const TwoColorableCut& cut) {
  MulticutLabeling labeling = labeling_from_cut(graph, cut.cut_edges);
  int num_components = 0;
  for (int c : labeling.component_of) num_components = std::max(num_components, c + 1);

  std::vector<TwoColorableCut> out;
  std::set<std::vector<std::uint8_t>> seen;
  for (int c = 0; c < num_components; ++c) {
    std::vector<std::uint8_t> side(graph.num_nodes, 0);
    for (int v = 0; v < graph.num_nodes; ++v) side[v] = labeling.component_of[v] == c;
    TwoColorableCut iso = cut_from_sides(graph, std::move(side));
    if (seen.insert(iso.cut_edges).second) out.push_back(std::move(iso));
  }
  return out;
}

}  // namespace multicut
