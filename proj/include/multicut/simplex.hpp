#pragma once

#include <vector>

#include "multicut/common.hpp"

namespace multicut {

// Equality-form LP: min c'x  s.t.  Ax = b,  l <= x <= u  (u may be +inf).
// Columns are sparse (row, coefficient) lists. Inequalities are modeled by
// the caller through explicit slack/surplus columns.
struct LpColumn {
  std::vector<std::pair<int, double>> entries;
};

struct LpProblem {
  int num_rows = 0;
  std::vector<LpColumn> columns;
  std::vector<double> cost;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> rhs;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kPivotLimit };

struct LpSolution {
  LpStatus status = LpStatus::kOptimal;
  double objective = 0.0;
  std::vector<double> x;              // structural variable values
  std::vector<double> y;              // equality multipliers; d_j = c_j - y'A_j
  std::vector<double> reduced_costs;  // per structural variable
  std::vector<int> basis;             // basic variable per row; -1 marks a
                                      // (degenerate, zero-valued) artificial
  long pivots = 0;
};

// Two-phase bounded-variable revised simplex with Dantzig pricing, Bland's
// rule on stalls, and product-form eta updates refactorized periodically.
// `warm_basis` (length num_rows) restarts from a previous basis; entries are
// structural column ids, -1 patches that row with a fresh artificial. An
// unusable warm basis silently falls back to a cold start.
LpSolution solve_lp(const LpProblem& problem, const std::vector<int>* warm_basis = nullptr);

}  // namespace multicut
