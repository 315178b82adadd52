#include "multicut/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>

#include "multicut/oracle.hpp"

namespace multicut {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::optional<MulticutLabeling> round_upper_bound(const ProblemInstance& instance,
                                                  const std::vector<double>& x,
                                                  const std::vector<double>& mu_grid) {
  const auto& graph = instance.graph;
  const int m = graph.num_edges();
  if (static_cast<int>(x.size()) != m) throw MulticutError("round_upper_bound: x has wrong size");

  std::optional<MulticutLabeling> best;
  double best_cost = kInf;
  for (double mu : mu_grid) {
    // Threshold, then repair: contract every edge below the threshold and cut
    // exactly the edges whose endpoints land in different components.
    UnionFind uf(graph.num_nodes);
    for (int e = 0; e < m; ++e) {
      if (x[e] < mu) uf.unite(graph.edges[e].first, graph.edges[e].second);
    }
    bool separated = true;
    for (const auto& [a, b] : instance.pairs) {
      if (uf.find(a) == uf.find(b)) {
        separated = false;
        break;
      }
    }
    if (!separated) continue;
    std::vector<std::uint8_t> cut(m, 0);
    for (int e = 0; e < m; ++e) {
      cut[e] = uf.find(graph.edges[e].first) != uf.find(graph.edges[e].second) ? 1 : 0;
    }
    const double cost = multicut_cost(instance.theta, cut);
    if (cost < best_cost - 1e-12) {  // ties keep the lowest threshold
      best_cost = cost;
      best = labeling_from_cut(graph, cut);
    }
  }
  return best;
}

double lower_bound_from_oracle(const std::vector<double>& lambda, const std::vector<double>& psi,
                               double oracle_value) {
  double bound = 0.0;
  for (double v : lambda) bound -= v;
  for (double v : psi) bound += v;
  return bound + 1.5 * std::min(0.0, oracle_value);
}

double lower_bound(const ProblemInstance& instance, const std::vector<double>& lambda,
                   const std::vector<double>& psi, const std::vector<PathRow>& rows) {
  const int m = instance.graph.num_edges();
  if (static_cast<int>(lambda.size()) != m) throw MulticutError("lower_bound: lambda has wrong size");
  if (psi.size() != rows.size()) throw MulticutError("lower_bound: psi does not match rows");
  for (double v : lambda) {
    if (v < -kTolFeas) throw MulticutError("lower_bound: lambda must be nonnegative");
  }
  for (double v : psi) {
    if (v < -kTolFeas) throw MulticutError("lower_bound: psi must be nonnegative");
  }

  std::vector<double> w(instance.theta);
  for (int e = 0; e < m; ++e) w[e] += std::max(0.0, lambda[e]);
  for (std::size_t p = 0; p < rows.size(); ++p) {
    for (int e : rows[p].edge_sequence) w[e] -= std::max(0.0, psi[p]);
  }
  const auto [cut, value] = planar_two_colorable_min(instance.graph, w);
  (void)cut;
  return lower_bound_from_oracle(lambda, psi, value);
}

CycCheckResult cyc_membership_check(const EmbeddedPlanarGraph& graph, const std::vector<double>& x,
                                    double tol) {
  const int n = graph.num_nodes;
  const int m = graph.num_edges();
  if (static_cast<int>(x.size()) != m) throw MulticutError("cyc_membership_check: x has wrong size");

  for (int pivot = 0; pivot < m; ++pivot) {
    if (x[pivot] <= tol) continue;  // a nonpositive target can never be undercut
    const auto [src, dst] = graph.edges[pivot];

    std::vector<double> dist(n, kInf);
    std::vector<int> parent_edge(n, -1), parent_node(n, -1);
    dist[src] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.emplace(0.0, src);
    while (!heap.empty()) {
      auto [du, u] = heap.top();
      heap.pop();
      if (du > dist[u]) continue;
      for (auto [v, e] : graph.adjacency[u]) {
        if (e == pivot) continue;
        const double nd = du + std::max(0.0, x[e]);
        if (nd < dist[v]) {
          dist[v] = nd;
          parent_edge[v] = e;
          parent_node[v] = u;
          heap.emplace(nd, v);
        }
      }
    }
    if (dist[dst] < x[pivot] - tol) {
      CycCheckResult result;
      result.member = false;
      CycWitness witness;
      witness.pivot_edge = pivot;
      for (int u = dst; u != src; u = parent_node[u]) witness.cycle_edges.push_back(parent_edge[u]);
      std::reverse(witness.cycle_edges.begin(), witness.cycle_edges.end());
      witness.cycle_edges.push_back(pivot);
      result.witness = std::move(witness);
      return result;
    }
  }
  return CycCheckResult{};
}

OptimalResult brute_force_optimal(const ProblemInstance& instance) {
  const auto& graph = instance.graph;
  const int n = graph.num_nodes;
  const int m = graph.num_edges();
  if (n > 12) {
    throw MulticutError("brute_force_optimal supports at most 12 nodes, got " + std::to_string(n));
  }

  std::vector<int> label(n, 0);
  std::vector<std::uint8_t> cut(m, 0), best_cut;
  double best_cost = kInf;

  std::function<void(int, int)> enumerate = [&](int i, int used) {
    if (i == n) {
      for (const auto& [a, b] : instance.pairs) {
        if (label[a] == label[b]) return;
      }
      double cost = 0.0;
      for (int e = 0; e < m; ++e) {
        cut[e] = label[graph.edges[e].first] != label[graph.edges[e].second] ? 1 : 0;
        if (cut[e]) cost += instance.theta[e];
      }
      const bool better =
          cost < best_cost - 1e-12 ||
          (cost <= best_cost + 1e-12 && (best_cut.empty() || cut < best_cut));
      if (better) {
        best_cost = std::min(best_cost, cost);
        best_cut = cut;
      }
      return;
    }
    for (int c = 0; c <= used; ++c) {
      label[i] = c;
      enumerate(i + 1, std::max(used, c + 1));
    }
  };
  enumerate(1, 1);  // node 0 pinned to block 0

  if (best_cut.empty() && m > 0) throw MulticutError("brute_force_optimal: no feasible partition");
  if (best_cut.empty()) best_cut.assign(graph.edges.size(), 0);
  OptimalResult result;
  result.labeling = labeling_from_cut(graph, best_cut);
  result.cost = best_cost == kInf ? 0.0 : best_cost;
  return result;
}

double normalized_gap(double ub, double lb) {
  if (std::isnan(ub) || std::isnan(lb)) return kInf;
  if (!(ub < kInf) || !(lb > -kInf)) return kInf;
  double diff = ub - lb;
  if (diff < 0.0) diff = 0.0;
  if (lb == 0.0) return diff == 0.0 ? 0.0 : kInf;
  return diff / std::abs(lb);
}

}  // namespace multicut
