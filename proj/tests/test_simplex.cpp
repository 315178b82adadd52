#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "multicut/simplex.hpp"

using namespace multicut;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LpProblem empty_problem(int num_vars) {
  LpProblem p;
  p.num_rows = 0;
  p.columns.resize(num_vars);
  p.cost.assign(num_vars, 0.0);
  p.lower.assign(num_vars, 0.0);
  p.upper.assign(num_vars, kInf);
  p.rhs.clear();
  return p;
}

// Optimality certificate: primal feasibility, dual consistency d = c - y'A,
// and the sign conditions that pair reduced costs with active bounds.
void check_certificate(const LpProblem& p, const LpSolution& sol) {
  REQUIRE(sol.status == LpStatus::kOptimal);
  const int n = static_cast<int>(p.columns.size());
  REQUIRE(static_cast<int>(sol.x.size()) == n);
  REQUIRE(static_cast<int>(sol.y.size()) == p.num_rows);
  REQUIRE(static_cast<int>(sol.reduced_costs.size()) == n);

  double scale = 1.0;
  for (int i = 0; i < p.num_rows; ++i) scale = std::max(scale, std::abs(p.rhs[i]));

  // Ax = b
  std::vector<double> ax(p.num_rows, 0.0);
  for (int j = 0; j < n; ++j) {
    for (const auto& [row, coef] : p.columns[j].entries) ax[row] += coef * sol.x[j];
  }
  for (int i = 0; i < p.num_rows; ++i) CHECK(std::abs(ax[i] - p.rhs[i]) <= 1e-7 * scale);

  // bounds and reduced-cost signs
  for (int j = 0; j < n; ++j) {
    CHECK(sol.x[j] >= p.lower[j] - 1e-7);
    CHECK(sol.x[j] <= p.upper[j] + 1e-7);

    double dual_dot = 0.0;
    for (const auto& [row, coef] : p.columns[j].entries) dual_dot += sol.y[row] * coef;
    CHECK(std::abs(sol.reduced_costs[j] - (p.cost[j] - dual_dot)) <= 1e-7);

    const bool at_lower = std::abs(sol.x[j] - p.lower[j]) <= 1e-7;
    const bool at_upper = p.upper[j] < kInf && std::abs(sol.x[j] - p.upper[j]) <= 1e-7;
    if (!at_lower && !at_upper) {
      CHECK(std::abs(sol.reduced_costs[j]) <= 1e-7);  // strictly between bounds
    } else if (at_lower && !at_upper) {
      CHECK(sol.reduced_costs[j] >= -1e-7);
    } else if (at_upper && !at_lower) {
      CHECK(sol.reduced_costs[j] <= 1e-7);
    }
  }

  double cx = 0.0;
  for (int j = 0; j < n; ++j) cx += p.cost[j] * sol.x[j];
  CHECK(std::abs(sol.objective - cx) <= 1e-7 * std::max(1.0, std::abs(cx)));
}

}  // namespace

TEST_CASE("no rows: minimizing variables sit at the cheap bound") {
  LpProblem p = empty_problem(3);
  p.cost = {-1.0, 2.0, 0.0};
  p.upper = {5.0, kInf, 7.0};
  const LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.x == std::vector<double>{5.0, 0.0, 0.0});
  CHECK(sol.objective == -5.0);
  CHECK(sol.pivots == 0);
}

TEST_CASE("no rows: negative cost with infinite upper bound is unbounded") {
  LpProblem p = empty_problem(1);
  p.cost = {-1.0};
  CHECK(solve_lp(p).status == LpStatus::kUnbounded);
}

TEST_CASE("free variables are rejected, not mis-solved") {
  // the contract is l <= x <= u with finite l; only u may be infinite
  LpProblem p = empty_problem(1);
  p.cost = {3.0};
  p.lower = {-kInf};
  CHECK_THROWS_AS(solve_lp(p), MulticutError);
}

TEST_CASE("no rows: finite negative lower bound settles there") {
  LpProblem p = empty_problem(1);
  p.cost = {3.0};
  p.lower = {-2.0};
  const LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.x[0] == -2.0);
  CHECK(sol.objective == -6.0);
}

TEST_CASE("single equality row") {
  // min x1  s.t.  x1 + x2 = 1, x >= 0  ->  x = (0, 1)
  LpProblem p = empty_problem(2);
  p.num_rows = 1;
  p.rhs = {1.0};
  p.columns[0].entries = {{0, 1.0}};
  p.columns[1].entries = {{0, 1.0}};
  p.cost = {1.0, 0.0};
  const LpSolution sol = solve_lp(p);
  check_certificate(p, sol);
  CHECK(sol.objective == doctest::Approx(0.0));
  CHECK(sol.x[0] == doctest::Approx(0.0));
  CHECK(sol.x[1] == doctest::Approx(1.0));
}

TEST_CASE("inconsistent equalities are infeasible") {
  // x1 = 1 and x1 = 2
  LpProblem p = empty_problem(1);
  p.num_rows = 2;
  p.rhs = {1.0, 2.0};
  p.columns[0].entries = {{0, 1.0}, {1, 1.0}};
  CHECK(solve_lp(p).status == LpStatus::kInfeasible);
}

TEST_CASE("empty feasible region from bounds is infeasible") {
  // x1 = 5 with x1 <= 3
  LpProblem p = empty_problem(1);
  p.num_rows = 1;
  p.rhs = {5.0};
  p.upper = {3.0};
  p.columns[0].entries = {{0, 1.0}};
  CHECK(solve_lp(p).status == LpStatus::kInfeasible);
}

TEST_CASE("slack-form inequality optimum") {
  // min -x1 - x2  s.t.  x1 + x2 + s = 1  ->  objective -1
  LpProblem p = empty_problem(3);
  p.num_rows = 1;
  p.rhs = {1.0};
  p.columns[0].entries = {{0, 1.0}};
  p.columns[1].entries = {{0, 1.0}};
  p.columns[2].entries = {{0, 1.0}};
  p.cost = {-1.0, -1.0, 0.0};
  const LpSolution sol = solve_lp(p);
  check_certificate(p, sol);
  CHECK(sol.objective == doctest::Approx(-1.0));
}

TEST_CASE("upper bound caps the improving variable") {
  // min -x  s.t.  x + s = 10, x <= 3  ->  x = 3
  LpProblem p = empty_problem(2);
  p.num_rows = 1;
  p.rhs = {10.0};
  p.columns[0].entries = {{0, 1.0}};
  p.columns[1].entries = {{0, 1.0}};
  p.cost = {-1.0, 0.0};
  p.upper = {3.0, kInf};
  const LpSolution sol = solve_lp(p);
  check_certificate(p, sol);
  CHECK(sol.objective == doctest::Approx(-3.0));
  CHECK(sol.x[0] == doctest::Approx(3.0));
}

TEST_CASE("unbounded ray through a row") {
  // min -x1  s.t.  x1 - x2 = 0, x >= 0: grow both forever
  LpProblem p = empty_problem(2);
  p.num_rows = 1;
  p.rhs = {0.0};
  p.columns[0].entries = {{0, 1.0}};
  p.columns[1].entries = {{0, -1.0}};
  p.cost = {-1.0, 0.0};
  CHECK(solve_lp(p).status == LpStatus::kUnbounded);
}

TEST_CASE("classic degenerate cycling example terminates at the optimum") {
  // Beale's example; Dantzig pricing cycles without a guard. Optimum -1/20.
  LpProblem p = empty_problem(7);
  p.num_rows = 3;
  p.rhs = {0.0, 0.0, 1.0};
  p.cost = {-0.75, 150.0, -0.02, 6.0, 0.0, 0.0, 0.0};
  p.columns[0].entries = {{0, 0.25}, {1, 0.5}};
  p.columns[1].entries = {{0, -60.0}, {1, -90.0}};
  p.columns[2].entries = {{0, -1.0 / 25.0}, {1, -1.0 / 50.0}, {2, 1.0}};
  p.columns[3].entries = {{0, 9.0}, {1, 3.0}};
  p.columns[4].entries = {{0, 1.0}};
  p.columns[5].entries = {{1, 1.0}};
  p.columns[6].entries = {{2, 1.0}};
  const LpSolution sol = solve_lp(p);
  check_certificate(p, sol);
  CHECK(sol.objective == doctest::Approx(-0.05));
  CHECK(sol.x[0] == doctest::Approx(1.0 / 25.0));
  CHECK(sol.x[2] == doctest::Approx(1.0));
}

TEST_CASE("random LPs built around a known feasible point satisfy the certificate") {
  Rng rng(2024);
  int optimal = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int m = rng.uniform_int(1, 6);
    const int n = m + rng.uniform_int(0, 8);
    LpProblem p = empty_problem(n);
    p.num_rows = m;
    p.rhs.assign(m, 0.0);

    std::vector<double> xhat(n);
    for (int j = 0; j < n; ++j) xhat[j] = rng.uniform_int(0, 2);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < m; ++i) {
        const int coef = rng.uniform_int(-3, 3);
        if (coef != 0) p.columns[j].entries.push_back({i, static_cast<double>(coef)});
      }
      p.cost[j] = rng.uniform_int(-5, 5);
      p.upper[j] = xhat[j] + rng.uniform_int(0, 3);  // finite bounds keep it bounded
    }
    for (int j = 0; j < n; ++j) {
      for (const auto& [row, coef] : p.columns[j].entries) p.rhs[row] += coef * xhat[j];
    }

    const LpSolution sol = solve_lp(p);
    REQUIRE(sol.status == LpStatus::kOptimal);  // xhat is feasible, bounds finite
    check_certificate(p, sol);

    // the known feasible point bounds the optimum from above
    double chat = 0.0;
    for (int j = 0; j < n; ++j) chat += p.cost[j] * xhat[j];
    CHECK(sol.objective <= chat + 1e-7 * std::max(1.0, std::abs(chat)));
    ++optimal;
  }
  CHECK(optimal == 200);
}

TEST_CASE("warm start from the optimal basis resolves without pivoting") {
  LpProblem p = empty_problem(4);
  p.num_rows = 2;
  p.rhs = {4.0, 3.0};
  p.cost = {-2.0, -1.0, 0.0, 0.0};
  p.columns[0].entries = {{0, 1.0}, {1, 1.0}};
  p.columns[1].entries = {{0, 2.0}, {1, 1.0}};
  p.columns[2].entries = {{0, 1.0}};
  p.columns[3].entries = {{1, 1.0}};

  const LpSolution cold = solve_lp(p);
  check_certificate(p, cold);

  const LpSolution warm = solve_lp(p, &cold.basis);
  REQUIRE(warm.status == LpStatus::kOptimal);
  CHECK(warm.objective == doctest::Approx(cold.objective));
  CHECK(warm.pivots == 0);
  check_certificate(p, warm);
}

TEST_CASE("warm start with a patched row still reaches the optimum") {
  LpProblem p = empty_problem(4);
  p.num_rows = 2;
  p.rhs = {4.0, 3.0};
  p.cost = {-2.0, -1.0, 0.0, 0.0};
  p.columns[0].entries = {{0, 1.0}, {1, 1.0}};
  p.columns[1].entries = {{0, 2.0}, {1, 1.0}};
  p.columns[2].entries = {{0, 1.0}};
  p.columns[3].entries = {{1, 1.0}};

  const LpSolution cold = solve_lp(p);
  std::vector<int> basis = cold.basis;
  basis[0] = -1;  // pretend this row is new: patched with an artificial
  const LpSolution warm = solve_lp(p, &basis);
  REQUIRE(warm.status == LpStatus::kOptimal);
  CHECK(warm.objective == doctest::Approx(cold.objective));
  check_certificate(p, warm);
}

TEST_CASE("garbage warm basis falls back to a cold start") {
  LpProblem p = empty_problem(2);
  p.num_rows = 1;
  p.rhs = {1.0};
  p.columns[0].entries = {{0, 1.0}};
  p.columns[1].entries = {{0, 1.0}};
  p.cost = {1.0, 0.0};
  std::vector<int> junk = {17};  // out-of-range column id
  const LpSolution sol = solve_lp(p, &junk);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(0.0));
}
