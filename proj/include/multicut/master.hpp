#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "multicut/instance.hpp"
#include "multicut/oracle.hpp"

namespace multicut {

// One generated path constraint: a walk between the two nodes of pair
// `pair_index`. The row's coefficients are the distinct edges on the walk
// (repeats collapse to 1 in `edge_mask`).
struct PathRow {
  int pair_index = -1;
  std::vector<int> edge_sequence;
  std::vector<std::uint8_t> edge_mask;

  friend bool operator==(const PathRow&, const PathRow&) = default;
};

// Validates that `edge_sequence` walks from one node of the pair to the other
// and fills the collapsed indicator.
PathRow make_path_row(const ProblemInstance& instance, int pair_index,
                      std::vector<int> edge_sequence);

// Solution of the restricted LP
//   min  theta'(Z gamma) + |theta^-|' beta + theta^+' kappa
//   s.t. (Z gamma)_e - beta_e <= 1                 [lambda_e >= 0]
//        sum_{e in p} ((Z gamma)_e + kappa_e) >= 1 [psi_p >= 0]
//        gamma, beta, kappa >= 0
// with duals boxed by 0 <= lambda <= |theta^-| and psi >= 0, S' psi <= theta^+.
struct MasterSolution {
  double objective = 0.0;
  std::vector<double> gamma;  // per column
  std::vector<double> beta;   // per edge
  std::vector<double> kappa;  // per edge
  std::vector<double> lambda;
  std::vector<double> psi;    // per row
  double dual_objective = 0.0;          // -sum(lambda) + sum(psi)
  double max_dual_box_violation = 0.0;  // worst clamp applied to the LP duals
};

struct MasterState {
  std::vector<TwoColorableCut> columns;
  std::vector<PathRow> rows;
  MasterSolution solution;
  bool solved = false;
  long lp_pivots = 0;  // cumulative across solves

  // warm start: basic variable per LP row as (kind, index); kept across
  // column/row additions because it is remapped on each rebuild
  std::vector<std::pair<int, int>> warm_basis;
};

// Solves the restricted LP (always feasible and bounded: gamma = 0 with slack
// supplied by beta/kappa is feasible, and all improving directions are cost
// bounded). Duals are clamped into their boxes with the largest clamp
// recorded. Throws MulticutError if the LP engine fails.
void solve_restricted_lp(const ProblemInstance& instance, MasterState& state);

// X_e = min(1, (Z gamma)_e + kappa_e), entries in [0, 1].
std::vector<double> edge_values(const ProblemInstance& instance, const MasterState& state);

// Canonicalizes slack without changing edge_values (at an exact optimum, the
// objective): beta_e := max(0, (Z gamma)_e - 1), then kappa is reduced
// greedily in edge order while every path row keeps lhs >= 1.
void reduce_slacks(const ProblemInstance& instance, MasterState& state);

// Both return false (and change nothing) for duplicates; add_column also
// rejects the empty cut. Successful additions invalidate `solved`.
bool add_column(MasterState& state, TwoColorableCut cut);
bool add_row(const ProblemInstance& instance, MasterState& state, PathRow row);

}  // namespace multicut
