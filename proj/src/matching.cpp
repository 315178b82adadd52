#include "multicut/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace multicut {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum Label : int { kFree = 0, kEven = 1, kOdd = 2 };

// Primal-dual blossom matcher. Pseudo-node ids 0..n-1 are the real vertices,
// larger ids are blossoms. Duals: y per real vertex, z >= 0 per blossom.
// Vertices in different top-level pseudos never share an active blossom, so
// the reduced cost of a cross edge is simply cost - y_u - y_v; matching and
// alternating-forest edges are kept tight (reduced cost zero) throughout.
class BlossomMatcher {
 public:
  BlossomMatcher(int n, std::vector<WeightedMatchingProblem::Edge> edges)
      : n_(n), edges_(std::move(edges)) {
    double scale = 1.0;
    double wmin = 0.0;
    for (const auto& e : edges_) {
      scale = std::max(scale, std::abs(e.cost));
      wmin = std::min(wmin, e.cost);
    }
    eps_ = 1e-9 * scale;
    mate_.assign(n_, -1);
    // y must start with every edge slack nonnegative
    y_.assign(n_, wmin / 2.0);
    top_of_.resize(n_);
    for (int v = 0; v < n_; ++v) top_of_[v] = v;
    parent_bl_.assign(n_, -1);
    label_.assign(n_, kFree);
    tpe_.assign(n_, {-1, -1});
    z_.assign(n_, 0.0);
  }

  void solve() {
    int unmatched = n_;
    while (unmatched > 0) {
      run_phase();
      unmatched -= 2;
    }
  }

  const std::vector<int>& mate() const { return mate_; }

 private:
  struct Blossom {
    bool alive = false;
    std::vector<int> children;  // pseudo ids in cyclic order
    // cycle_edges[i] joins children[i] -> children[(i+1) % s], stored as the
    // connecting real endpoints (one inside each child, in that order)
    std::vector<std::pair<int, int>> cycle_edges;
    int base = -1;  // real base vertex
  };

  bool is_blossom(int p) const { return p >= n_; }
  Blossom& blossom(int p) { return blossoms_[p - n_]; }

  int base_of(int p) { return is_blossom(p) ? blossom(p).base : p; }

  double slack(const WeightedMatchingProblem::Edge& e) const {
    return e.cost - y_[e.u] - y_[e.v];
  }

  void collect_reals(int p, std::vector<int>& out) {
    if (!is_blossom(p)) {
      out.push_back(p);
      return;
    }
    for (int c : blossom(p).children) collect_reals(c, out);
  }

  template <typename F>
  void for_each_top(F&& f) {
    for (int v = 0; v < n_; ++v)
      if (parent_bl_[v] == -1) f(v);
    for (size_t s = 0; s < blossoms_.size(); ++s) {
      int id = n_ + static_cast<int>(s);
      if (blossoms_[s].alive && parent_bl_[id] == -1) f(id);
    }
  }

  int tree_root(int p) const {
    while (tpe_[p].first != -1) p = top_of_[tpe_[p].first];
    return p;
  }

  std::vector<int> chain_to_root(int p) const {
    std::vector<int> chain = {p};
    while (tpe_[p].first != -1) {
      p = top_of_[tpe_[p].first];
      chain.push_back(p);
    }
    return chain;
  }

  // Re-anchors pseudo p's internal matching so the real vertex x becomes its
  // exposed base; every other vertex inside stays internally matched.
  void rotate_to_base(int p, int x) {
    if (!is_blossom(p)) return;
    Blossom& b = blossom(p);
    int c = x;
    while (parent_bl_[c] != p) c = parent_bl_[c];
    int s = static_cast<int>(b.children.size());
    int j = 0;
    while (b.children[j] != c) ++j;
    for (int t = 1; t + 1 < s + 1; t += 2) {
      int ia = (j + t) % s;
      int ib = (j + t + 1) % s;
      auto [xa, xb] = b.cycle_edges[ia];
      rotate_to_base(b.children[ia], xa);
      rotate_to_base(b.children[ib], xb);
      mate_[xa] = xb;
      mate_[xb] = xa;
    }
    rotate_to_base(c, x);
    b.base = x;
  }

  // Labels pseudo Q odd via the tight edge (u in an even pseudo, v in Q) and
  // its external mate pseudo even.
  void grow(int q_pseudo, int u, int v) {
    label_[q_pseudo] = kOdd;
    tpe_[q_pseudo] = {u, v};
    int b = base_of(q_pseudo);
    int w = mate_[b];
    if (w < 0) throw MulticutError("matching internal error: free pseudo not labeled even");
    int m = top_of_[w];
    label_[m] = kEven;
    tpe_[m] = {b, w};
  }

  // Contracts the odd cycle closed by the tight edge (u, v) between two even
  // pseudos in the same tree.
  void contract(int u, int v) {
    int p = top_of_[u];
    int q = top_of_[v];
    std::vector<int> chain_p = chain_to_root(p);
    std::vector<int> chain_q = chain_to_root(q);
    std::vector<char> onp(blossoms_.size() + n_, 0);
    for (int c : chain_p) onp[c] = 1;
    size_t qi = 0;
    while (!onp[chain_q[qi]]) ++qi;
    int r = chain_q[qi];
    chain_q.resize(qi + 1);  // Q .. R inclusive
    size_t pi = 0;
    while (chain_p[pi] != r) ++pi;
    chain_p.resize(pi + 1);  // P .. R inclusive

    std::vector<int> children = {r};
    std::vector<std::pair<int, int>> cyc;
    for (int i = static_cast<int>(chain_p.size()) - 2; i >= 0; --i) {
      children.push_back(chain_p[i]);
      cyc.push_back(tpe_[chain_p[i]]);  // joins chain_p[i+1] -> chain_p[i]
    }
    cyc.emplace_back(u, v);  // closes P -> Q (or P -> R when Q == R)
    for (size_t i = 0; i + 1 < chain_q.size(); ++i) {
      children.push_back(chain_q[i]);
      auto [a, bb] = tpe_[chain_q[i]];
      cyc.emplace_back(bb, a);  // joins chain_q[i] -> chain_q[i+1], reversed
    }
    int id = alloc_blossom();
    Blossom& b = blossom(id);
    b.alive = true;
    b.children = std::move(children);
    b.cycle_edges = std::move(cyc);
    b.base = base_of(r);
    z_[id] = 0.0;
    for (int c : b.children) parent_bl_[c] = id;
    parent_bl_[id] = -1;
    label_[id] = kEven;
    tpe_[id] = tpe_[r];
    scratch_.clear();
    collect_reals(id, scratch_);
    for (int rv : scratch_) top_of_[rv] = id;
  }

  // Dissolves a top-level odd blossom whose dual has dropped to zero,
  // relabeling the children on the alternating path through it.
  void expand(int id) {
    Blossom& b = blossom(id);
    auto [p_out, q_in] = tpe_[id];
    for (int c : b.children) {
      parent_bl_[c] = -1;
      label_[c] = kFree;
      tpe_[c] = {-1, -1};
      scratch_.clear();
      collect_reals(c, scratch_);
      for (int rv : scratch_) top_of_[rv] = c;
    }
    int s = static_cast<int>(b.children.size());
    int jq = 0;
    while (b.children[jq] != top_of_[q_in]) ++jq;
    int j0 = 0;
    while (b.children[j0] != top_of_[b.base]) ++j0;

    label_[b.children[jq]] = kOdd;
    tpe_[b.children[jq]] = {p_out, q_in};
    if (jq != j0) {
      // walk toward the base child starting across jq's matched cycle edge
      auto [ma, mb] = b.cycle_edges[jq];
      int dir = mate_[ma] == mb ? 1 : -1;
      int cur = jq;
      int lab = kEven;
      while (cur != j0) {
        int nxt = (cur + dir + s) % s;
        std::pair<int, int> edge;
        if (dir > 0) {
          edge = b.cycle_edges[cur];  // (in children[cur], in children[nxt])
        } else {
          auto [xa, xb] = b.cycle_edges[nxt];
          edge = {xb, xa};
        }
        label_[b.children[nxt]] = lab;
        tpe_[b.children[nxt]] = edge;
        lab = lab == kEven ? kOdd : kEven;
        cur = nxt;
      }
    }
    b.alive = false;
    b.children.clear();
    b.cycle_edges.clear();
    label_[id] = kFree;
    tpe_[id] = {-1, -1};
    z_[id] = 0.0;
    free_slots_.push_back(id);
  }

  void augment_up(int p, int x) {
    int cur = p;
    int enter = x;
    while (true) {
      rotate_to_base(cur, enter);
      if (tpe_[cur].first == -1) break;
      int odd = top_of_[tpe_[cur].first];
      auto [po, qo] = tpe_[odd];
      rotate_to_base(odd, qo);
      mate_[qo] = po;
      mate_[po] = qo;
      cur = top_of_[po];
      enter = po;
    }
  }

  void augment(int u, int v) {
    augment_up(top_of_[u], u);
    augment_up(top_of_[v], v);
    mate_[u] = v;
    mate_[v] = u;
  }

  // 0 = nothing tight, 1 = forest changed, 2 = augmented (phase over)
  int scan() {
    for (const auto& e : edges_) {
      int p = top_of_[e.u];
      int q = top_of_[e.v];
      if (p == q) continue;
      if (slack(e) > eps_) continue;
      if (label_[p] == kEven && label_[q] == kFree) {
        grow(q, e.u, e.v);
        return 1;
      }
      if (label_[q] == kEven && label_[p] == kFree) {
        grow(p, e.v, e.u);
        return 1;
      }
      if (label_[p] == kEven && label_[q] == kEven) {
        if (tree_root(p) != tree_root(q)) {
          augment(e.u, e.v);
          return 2;
        }
        contract(e.u, e.v);
        return 1;
      }
    }
    return 0;
  }

  void run_phase() {
    std::fill(label_.begin(), label_.end(), kFree);
    std::fill(tpe_.begin(), tpe_.end(), std::make_pair(-1, -1));
    for_each_top([&](int p) {
      if (mate_[base_of(p)] == -1) label_[p] = kEven;
    });

    long guard = 60L * (n_ + 2);
    while (guard-- > 0) {
      int action = scan();
      if (action == 2) return;
      if (action == 1) continue;

      double d1 = kInf, d2 = kInf, d3 = kInf;
      for (const auto& e : edges_) {
        int p = top_of_[e.u];
        int q = top_of_[e.v];
        if (p == q) continue;
        int lp = label_[p], lq = label_[q];
        double s = slack(e);
        if ((lp == kEven && lq == kFree) || (lp == kFree && lq == kEven))
          d1 = std::min(d1, s);
        else if (lp == kEven && lq == kEven)
          d2 = std::min(d2, s / 2.0);
      }
      int odd_zero = -1;
      for_each_top([&](int p) {
        if (is_blossom(p) && label_[p] == kOdd) {
          if (z_[p] / 2.0 < d3) d3 = z_[p] / 2.0;
        }
      });
      double delta = std::min({d1, d2, d3});
      if (delta == kInf) throw MulticutError("no perfect matching exists");
      if (delta > 0.0) {
        for (int v = 0; v < n_; ++v) {
          int l = label_[top_of_[v]];
          if (l == kEven)
            y_[v] += delta;
          else if (l == kOdd)
            y_[v] -= delta;
        }
        for_each_top([&](int p) {
          if (!is_blossom(p)) return;
          if (label_[p] == kEven)
            z_[p] += 2.0 * delta;
          else if (label_[p] == kOdd)
            z_[p] -= 2.0 * delta;
        });
      }
      for_each_top([&](int p) {
        if (odd_zero == -1 && is_blossom(p) && label_[p] == kOdd && z_[p] <= eps_)
          odd_zero = p;
      });
      if (odd_zero != -1) expand(odd_zero);
    }
    throw MulticutError("matching internal error: phase did not terminate");
  }

  int alloc_blossom() {
    if (!free_slots_.empty()) {
      int id = free_slots_.back();
      free_slots_.pop_back();
      return id;
    }
    blossoms_.emplace_back();
    parent_bl_.push_back(-1);
    label_.push_back(kFree);
    tpe_.emplace_back(-1, -1);
    z_.push_back(0.0);
    return n_ + static_cast<int>(blossoms_.size()) - 1;
  }

  int n_;
  std::vector<WeightedMatchingProblem::Edge> edges_;
  double eps_ = 0.0;
  std::vector<int> mate_;
  std::vector<double> y_;
  std::vector<double> z_;
  std::vector<Blossom> blossoms_;
  std::vector<int> free_slots_;
  std::vector<int> parent_bl_;
  std::vector<int> top_of_;
  std::vector<int> label_;
  std::vector<std::pair<int, int>> tpe_;
  std::vector<int> scratch_;
};

}  // namespace

MatchingResult min_weight_perfect_matching(const WeightedMatchingProblem& problem) {
  const int n = problem.num_vertices;
  if (n < 0) throw MulticutError("negative vertex count");
  if (n % 2 != 0) throw MulticutError("no perfect matching exists: odd vertex count");
  MatchingResult result;
  result.mate.assign(n, -1);
  if (n == 0) return result;

  // collapse parallel edges to the cheapest representative, drop self-loops
  std::unordered_map<long long, double> best;
  for (const auto& e : problem.edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw MulticutError("matching edge endpoint out of range");
    if (e.u == e.v) continue;
    long long a = std::min(e.u, e.v), b = std::max(e.u, e.v);
    long long key = a * static_cast<long long>(n) + b;
    auto it = best.find(key);
    if (it == best.end() || e.cost < it->second) best[key] = e.cost;
  }
  std::vector<WeightedMatchingProblem::Edge> edges;
  edges.reserve(best.size());
  for (const auto& [key, cost] : best) {
    int u = static_cast<int>(key / n);
    int v = static_cast<int>(key % n);
    edges.push_back({u, v, cost});
  }
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });

  BlossomMatcher matcher(n, edges);
  matcher.solve();
  result.mate = matcher.mate();

  for (int v = 0; v < n; ++v) {
    int w = result.mate[v];
    if (w < 0 || result.mate[w] != v)
      throw MulticutError("matching internal error: imperfect result");
    if (v < w) result.pairs.emplace_back(v, w);
  }
  for (auto [u, v] : result.pairs) {
    auto it = best.find(static_cast<long long>(u) * n + v);
    if (it == best.end()) throw MulticutError("matching internal error: matched non-edge");
    result.cost += it->second;
  }
  return result;
}

}  // namespace multicut
