#include "multicut/separation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "multicut/oracle.hpp"

namespace multicut {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// psi folded onto edges: (S' psi)_e = sum of psi_p over rows containing e.
std::vector<double> fold_psi(const ProblemInstance& instance, const MasterState& state) {
  std::vector<double> spsi(instance.graph.num_edges(), 0.0);
  const auto& psi = state.solution.psi;
  for (std::size_t p = 0; p < state.rows.size(); ++p) {
    for (int e : state.rows[p].edge_sequence) spsi[e] += psi[p];
  }
  return spsi;
}

}  // namespace

std::vector<double> oracle_weights(const ProblemInstance& instance, const MasterState& state) {
  if (!state.solved) throw MulticutError("oracle_weights requires a solved master state");
  std::vector<double> w = fold_psi(instance, state);
  for (int e = 0; e < instance.graph.num_edges(); ++e) {
    w[e] = instance.theta[e] + state.solution.lambda[e] - w[e];
  }
  return w;
}

OracleOutcome find_violating_column(const ProblemInstance& instance, const MasterState& state,
                                    double tol) {
  const std::vector<double> w = oracle_weights(instance, state);
  auto [cut, value] = planar_two_colorable_min(instance.graph, w);
  OracleOutcome out;
  out.cut = std::move(cut);
  out.value = value;
  out.violating = value < -tol;
  return out;
}

std::vector<double> compute_nu(const ProblemInstance& instance, const MasterState& state) {
  if (!state.solved) throw MulticutError("compute_nu requires a solved master state");
  const int m = instance.graph.num_edges();
  const std::vector<double> spsi = fold_psi(instance, state);
  const ThetaSplit split = split_theta(instance.theta);

  std::vector<double> w(m);
  for (int e = 0; e < m; ++e) w[e] = instance.theta[e] + state.solution.lambda[e] - spsi[e];

  std::vector<double> column_min(m, kInf);
  for (const auto& cut : state.columns) {
    double value = 0.0;
    for (int e = 0; e < m; ++e) {
      if (cut.cut_edges[e]) value += w[e];
    }
    for (int e = 0; e < m; ++e) {
      if (cut.cut_edges[e]) column_min[e] = std::min(column_min[e], value);
    }
  }

  std::vector<double> nu(m);
  for (int e = 0; e < m; ++e) nu[e] = std::min(split.pos[e] - spsi[e], column_min[e]);
  return nu;
}

std::optional<PathSearchResult> widest_path(const EmbeddedPlanarGraph& graph,
                                            const std::vector<double>& nu, int from, int to) {
  const int n = graph.num_nodes;
  if (from == to) throw MulticutError("widest_path endpoints must be distinct");

  // Stage 1: maximise the minimum edge capacity along the path, over edges
  // with strictly positive capacity.
  std::vector<double> width(n, -kInf);
  width[from] = kInf;
  std::priority_queue<std::pair<double, int>> heap;
  heap.emplace(kInf, from);
  while (!heap.empty()) {
    auto [wu, u] = heap.top();
    heap.pop();
    if (wu < width[u]) continue;
    for (auto [v, e] : graph.adjacency[u]) {
      if (!(nu[e] > kTolWidth)) continue;
      const double cand = std::min(wu, nu[e]);
      if (cand > width[v]) {
        width[v] = cand;
        heap.emplace(cand, v);
      }
    }
  }
  const double best = width[to];
  if (!(best > kTolWidth) || best == kInf) return std::nullopt;

  // Stage 2: within the subgraph of edges at least that wide, walk a
  // fewest-hop path choosing the smallest edge id at every step.
  std::vector<int> hops(n, -1);
  std::queue<int> bfs;
  hops[to] = 0;
  bfs.push(to);
  while (!bfs.empty()) {
    const int u = bfs.front();
    bfs.pop();
    for (auto [v, e] : graph.adjacency[u]) {
      if (!(nu[e] > kTolWidth) || nu[e] < best) continue;
      if (hops[v] < 0) {
        hops[v] = hops[u] + 1;
        bfs.push(v);
      }
    }
  }
  if (hops[from] < 0) throw MulticutError("widest_path internal error: bottleneck subgraph lost the target");

  PathSearchResult result;
  result.value = best;
  int u = from;
  while (u != to) {
    int pick_edge = -1;
    int pick_node = -1;
    for (auto [v, e] : graph.adjacency[u]) {
      if (!(nu[e] > kTolWidth) || nu[e] < best) continue;
      if (hops[v] != hops[u] - 1) continue;
      if (pick_edge < 0 || e < pick_edge) {
        pick_edge = e;
        pick_node = v;
      }
    }
    if (pick_edge < 0) throw MulticutError("widest_path internal error: no descent step");
    result.edges.push_back(pick_edge);
    u = pick_node;
  }
  return result;
}

std::optional<PathSearchResult> shortest_violated_path(const EmbeddedPlanarGraph& graph,
                                                       const std::vector<double>& x, int from,
                                                       int to, double tol) {
  const int n = graph.num_nodes;
  if (from == to) throw MulticutError("shortest_violated_path endpoints must be distinct");

  std::vector<double> dist(n, kInf);
  std::vector<int> parent_edge(n, -1);
  std::vector<int> parent_node(n, -1);
  dist[from] = 0.0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  heap.emplace(0.0, from);
  while (!heap.empty()) {
    auto [du, u] = heap.top();
    heap.pop();
    if (du > dist[u]) continue;
    for (auto [v, e] : graph.adjacency[u]) {
      const double nd = du + std::max(0.0, x[e]);
      if (nd < dist[v]) {
        dist[v] = nd;
        parent_edge[v] = e;
        parent_node[v] = u;
        heap.emplace(nd, v);
      }
    }
  }
  if (!(dist[to] < 1.0 - tol)) return std::nullopt;

  PathSearchResult result;
  result.value = dist[to];
  for (int u = to; u != from; u = parent_node[u]) result.edges.push_back(parent_edge[u]);
  std::reverse(result.edges.begin(), result.edges.end());
  return result;
}

}  // namespace multicut
