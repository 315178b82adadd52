#include "multicut/master.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "multicut/simplex.hpp"

namespace multicut {

namespace {

// warm-basis variable kinds
enum VarKind : int { kGamma = 0, kBeta = 1, kKappa = 2, kSlack = 3, kSurplus = 4 };

}  // namespace

PathRow make_path_row(const ProblemInstance& instance, int pair_index,
                      std::vector<int> edge_sequence) {
  const auto& g = instance.graph;
  if (pair_index < 0 || pair_index >= static_cast<int>(instance.pairs.size()))
    throw MulticutError("path row pair index out of range");
  if (edge_sequence.empty()) throw MulticutError("path row must contain at least one edge");
  auto [from, to] = instance.pairs[pair_index];
  int at = from;
  for (int e : edge_sequence) {
    if (e < 0 || e >= g.num_edges()) throw MulticutError("path row edge out of range");
    auto [u, v] = g.edges[e];
    if (at == u)
      at = v;
    else if (at == v)
      at = u;
    else
      throw MulticutError("path row edges do not form a walk from the pair");
  }
  if (at != to) throw MulticutError("path row walk does not end at the pair's second node");

  PathRow row;
  row.pair_index = pair_index;
  row.edge_mask.assign(g.num_edges(), 0);
  for (int e : edge_sequence) row.edge_mask[e] = 1;
  row.edge_sequence = std::move(edge_sequence);
  return row;
}

void solve_restricted_lp(const ProblemInstance& instance, MasterState& state) {
  const auto& g = instance.graph;
  const int m = g.num_edges();
  const int nc = static_cast<int>(state.columns.size());
  const int nr = static_cast<int>(state.rows.size());
  const ThetaSplit split = split_theta(instance.theta);

  // variable layout: gamma | beta | kappa | edge slack | path surplus
  const int off_beta = nc;
  const int off_kappa = off_beta + m;
  const int off_slack = off_kappa + m;
  const int off_surplus = off_slack + m;
  const int total = off_surplus + nr;

  LpProblem lp;
  lp.num_rows = m + nr;
  lp.rhs.assign(lp.num_rows, 1.0);
  lp.columns.resize(total);
  lp.cost.assign(total, 0.0);
  lp.lower.assign(total, 0.0);
  lp.upper.assign(total, std::numeric_limits<double>::infinity());

  for (int r = 0; r < nc; ++r) {
    const auto& cut = state.columns[r].cut_edges;
    auto& col = lp.columns[r].entries;
    double cost = 0.0;
    for (int e = 0; e < m; ++e) {
      if (!cut[e]) continue;
      col.emplace_back(e, 1.0);
      cost += instance.theta[e];
    }
    for (int p = 0; p < nr; ++p) {
      int overlap = 0;
      for (int e = 0; e < m; ++e)
        if (cut[e] && state.rows[p].edge_mask[e]) ++overlap;
      if (overlap > 0) lp.columns[r].entries.emplace_back(m + p, static_cast<double>(overlap));
    }
    lp.cost[r] = cost;
  }
  for (int e = 0; e < m; ++e) {
    lp.columns[off_beta + e].entries.emplace_back(e, -1.0);
    lp.cost[off_beta + e] = split.neg_mag[e];
    lp.cost[off_kappa + e] = split.pos[e];
    lp.columns[off_slack + e].entries.emplace_back(e, 1.0);
  }
  for (int p = 0; p < nr; ++p) {
    for (int e = 0; e < m; ++e)
      if (state.rows[p].edge_mask[e]) lp.columns[off_kappa + e].entries.emplace_back(m + p, 1.0);
    lp.columns[off_surplus + p].entries.emplace_back(m + p, -1.0);
  }

  auto kind_to_index = [&](std::pair<int, int> sem) -> int {
    auto [kind, idx] = sem;
    switch (kind) {
      case kGamma:
        return idx < nc ? idx : -1;
      case kBeta:
        return off_beta + idx;
      case kKappa:
        return off_kappa + idx;
      case kSlack:
        return off_slack + idx;
      case kSurplus:
        return idx < nr ? off_surplus + idx : -1;
      default:
        return -1;
    }
  };
  std::vector<int> warm;
  const std::vector<int>* warm_ptr = nullptr;
  if (!state.warm_basis.empty()) {
    warm.assign(lp.num_rows, -1);
    for (size_t i = 0; i < state.warm_basis.size() && i < warm.size(); ++i)
      warm[i] = kind_to_index(state.warm_basis[i]);
    warm_ptr = &warm;
  }

  LpSolution sol = solve_lp(lp, warm_ptr);
  if (sol.status != LpStatus::kOptimal)
    throw MulticutError("master LP did not solve to optimality (status " +
                        std::to_string(static_cast<int>(sol.status)) + ")");
  state.lp_pivots += sol.pivots;

  MasterSolution& out = state.solution;
  out.gamma.assign(sol.x.begin(), sol.x.begin() + nc);
  out.beta.assign(sol.x.begin() + off_beta, sol.x.begin() + off_beta + m);
  out.kappa.assign(sol.x.begin() + off_kappa, sol.x.begin() + off_kappa + m);
  out.objective = sol.objective;

  out.lambda.resize(m);
  out.psi.resize(nr);
  double violation = 0.0;
  for (int e = 0; e < m; ++e) {
    double l = -sol.y[e];
    violation = std::max(violation, std::max(-l, l - split.neg_mag[e]));
    out.lambda[e] = std::clamp(l, 0.0, split.neg_mag[e]);
  }
  for (int p = 0; p < nr; ++p) {
    double v = sol.y[m + p];
    violation = std::max(violation, -v);
    out.psi[p] = std::max(v, 0.0);
  }
  // psi's upper box is joint: S' psi <= theta^+
  for (int e = 0; e < m; ++e) {
    double spsi = 0.0;
    for (int p = 0; p < nr; ++p)
      if (state.rows[p].edge_mask[e]) spsi += out.psi[p];
    violation = std::max(violation, spsi - split.pos[e]);
  }
  out.max_dual_box_violation = violation;
  out.dual_objective = 0.0;
  for (double l : out.lambda) out.dual_objective -= l;
  for (double v : out.psi) out.dual_objective += v;

  // remember the basis semantically so later column/row additions can remap it
  state.warm_basis.assign(lp.num_rows, {-1, -1});
  for (int i = 0; i < lp.num_rows; ++i) {
    int j = sol.basis[i];
    if (j < 0) continue;
    if (j < off_beta)
      state.warm_basis[i] = {kGamma, j};
    else if (j < off_kappa)
      state.warm_basis[i] = {kBeta, j - off_beta};
    else if (j < off_slack)
      state.warm_basis[i] = {kKappa, j - off_kappa};
    else if (j < off_surplus)
      state.warm_basis[i] = {kSlack, j - off_slack};
    else
      state.warm_basis[i] = {kSurplus, j - off_surplus};
  }
  state.solved = true;
}

namespace {

std::vector<double> cut_load(const ProblemInstance& instance, const MasterState& state) {
  std::vector<double> zg(instance.graph.num_edges(), 0.0);
  for (size_t r = 0; r < state.columns.size(); ++r) {
    double gr = state.solution.gamma[r];
    if (gr == 0.0) continue;
    const auto& cut = state.columns[r].cut_edges;
    for (size_t e = 0; e < zg.size(); ++e)
      if (cut[e]) zg[e] += gr;
  }
  return zg;
}

}  // namespace

std::vector<double> edge_values(const ProblemInstance& instance, const MasterState& state) {
  if (!state.solved) throw MulticutError("edge_values requires a solved master state");
  std::vector<double> x = cut_load(instance, state);
  for (size_t e = 0; e < x.size(); ++e)
    x[e] = std::min(1.0, x[e] + state.solution.kappa[e]);
  return x;
}

void reduce_slacks(const ProblemInstance& instance, MasterState& state) {
  if (!state.solved) throw MulticutError("reduce_slacks requires a solved master state");
  const int m = instance.graph.num_edges();
  const int nr = static_cast<int>(state.rows.size());
  MasterSolution& sol = state.solution;
  std::vector<double> zg = cut_load(instance, state);

  for (int e = 0; e < m; ++e) sol.beta[e] = std::max(0.0, zg[e] - 1.0);

  std::vector<double> slack(nr, 0.0);
  for (int p = 0; p < nr; ++p) {
    double lhs = 0.0;
    for (int e = 0; e < m; ++e)
      if (state.rows[p].edge_mask[e]) lhs += zg[e] + sol.kappa[e];
    slack[p] = lhs - 1.0;
  }
  for (int e = 0; e < m; ++e) {
    if (sol.kappa[e] <= 0.0) continue;
    double allowance = sol.kappa[e];
    for (int p = 0; p < nr; ++p)
      if (state.rows[p].edge_mask[e]) allowance = std::min(allowance, slack[p]);
    allowance = std::max(allowance, 0.0);
    if (allowance == 0.0) continue;
    sol.kappa[e] -= allowance;
    for (int p = 0; p < nr; ++p)
      if (state.rows[p].edge_mask[e]) slack[p] -= allowance;
  }

  const ThetaSplit split = split_theta(instance.theta);
  double obj = 0.0;
  for (size_t r = 0; r < state.columns.size(); ++r)
    obj += sol.gamma[r] * cut_value(instance.theta, state.columns[r]);
  for (int e = 0; e < m; ++e) obj += split.neg_mag[e] * sol.beta[e] + split.pos[e] * sol.kappa[e];
  sol.objective = obj;
}

bool add_column(MasterState& state, TwoColorableCut cut) {
  bool empty = std::all_of(cut.cut_edges.begin(), cut.cut_edges.end(),
                           [](std::uint8_t b) { return b == 0; });
  if (empty) return false;
  for (const auto& existing : state.columns)
    if (existing.cut_edges == cut.cut_edges) return false;
  state.columns.push_back(std::move(cut));
  state.solved = false;
  return true;
}

bool add_row(const ProblemInstance& instance, MasterState& state, PathRow row) {
  // normalize through the validating constructor
  PathRow checked = make_path_row(instance, row.pair_index, row.edge_sequence);
  for (const auto& existing : state.rows)
    if (existing.edge_mask == checked.edge_mask) return false;
  state.rows.push_back(std::move(checked));
  state.solved = false;
  return true;
}

}  // namespace multicut
