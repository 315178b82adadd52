#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "doctest.h"
#include "multicut/driver.hpp"
#include "support/test_graphs.hpp"

using namespace multicut;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Invariants every finished run must satisfy, whatever the termination reason.
void check_report(const ProblemInstance& inst, const SolveReport& report) {
  CHECK(report.iterations >= 1);
  CHECK(report.elapsed >= 0.0);
  CHECK(report.best_lb > -kInf);
  CHECK(report.max_dual_box_violation <= 1e-8);
  CHECK(static_cast<int>(report.final_edge_values.size()) == inst.graph.num_edges());
  for (double x : report.final_edge_values) {
    CHECK(x >= -kTolFeas);
    CHECK(x <= 1.0 + kTolFeas);
  }

  if (report.best_labeling) {
    CHECK(labeling_is_consistent(inst.graph, *report.best_labeling));
    CHECK(separates_all_pairs(*report.best_labeling, inst.pairs));
    CHECK(multicut_cost(inst.theta, report.best_labeling->edge_cut) ==
          doctest::Approx(report.best_ub).epsilon(1e-9));
    CHECK(report.best_ub >= report.best_lb - 1e-6 * (1.0 + std::abs(report.best_ub)));
  }

  // trace: UB nonincreasing, LB nondecreasing, sizes nondecreasing
  REQUIRE(!report.trace.empty());
  for (std::size_t i = 0; i < report.trace.size(); ++i) {
    const TraceRow& row = report.trace[i];
    CHECK(row.iteration == static_cast<int>(i) + 1);
    if (i > 0) {
      const TraceRow& prev = report.trace[i - 1];
      CHECK(row.ub <= prev.ub + 1e-12);
      CHECK(row.lb >= prev.lb - 1e-12);
      CHECK(row.columns >= prev.columns);
      CHECK(row.rows >= prev.rows);
      CHECK(row.elapsed >= prev.elapsed);
    }
  }
  CHECK(report.trace.back().ub == report.best_ub);
  CHECK(report.trace.back().lb == report.best_lb);
  CHECK(report.num_columns >= report.trace.back().columns);
  CHECK(report.num_rows >= report.trace.back().rows);

  if (report.termination == Termination::kConverged) {
    // converged iterations add nothing after the trace row
    CHECK(report.num_columns == report.trace.back().columns);
    CHECK(report.num_rows == report.trace.back().rows);
    REQUIRE(report.best_labeling.has_value());
    CHECK(report.final_oracle_value >= -kTolColumn);
    // the certified bound matches the dual objective once the oracle is clean
    CHECK(report.best_lb >=
          report.final_dual_objective + 1.5 * std::min(0.0, report.final_oracle_value) - 1e-9);
    // converged X lies inside the cycle relaxation
    CHECK(cyc_membership_check(inst.graph, report.final_edge_values).member);
    // no path inequality is still violated
    for (const auto& [a, b] : inst.pairs) {
      CHECK_FALSE(shortest_violated_path(inst.graph, report.final_edge_values, a, b)
                      .has_value());
    }
  }
}

void check_reports_equal(const SolveReport& a, const SolveReport& b) {
  CHECK(a.termination == b.termination);
  CHECK(a.iterations == b.iterations);
  CHECK(a.best_ub == b.best_ub);
  CHECK(a.best_lb == b.best_lb);
  CHECK(a.final_lp_objective == b.final_lp_objective);
  CHECK(a.final_edge_values == b.final_edge_values);
  CHECK(a.num_columns == b.num_columns);
  CHECK(a.num_rows == b.num_rows);
  CHECK(a.lp_pivots == b.lp_pivots);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].lp_objective == b.trace[i].lp_objective);
    CHECK(a.trace[i].ub == b.trace[i].ub);
    CHECK(a.trace[i].lb == b.trace[i].lb);
    CHECK(a.trace[i].columns == b.trace[i].columns);
    CHECK(a.trace[i].rows == b.trace[i].rows);
  }
  if (a.best_labeling || b.best_labeling) {
    REQUIRE(a.best_labeling.has_value());
    REQUIRE(b.best_labeling.has_value());
    CHECK(*a.best_labeling == *b.best_labeling);
  }
}

}  // namespace

TEST_CASE("all-negative square converges to cutting everything") {
  const ProblemInstance inst = testing::c4_instance({-1.0, -1.0, -1.0, -1.0});
  for (Variant v : {Variant::kWidestPath, Variant::kNaive}) {
    SolverConfig config;
    config.variant = v;
    const SolveReport report = solve(inst, config);
    check_report(inst, report);
    CHECK(report.termination == Termination::kConverged);
    CHECK(report.best_ub == doctest::Approx(-4.0));
    CHECK(report.best_lb == doctest::Approx(-4.0));
    CHECK(report.gap() <= kTolGap);
    CHECK(report.best_labeling->edge_cut == std::vector<std::uint8_t>{1, 1, 1, 1});
  }
}

TEST_CASE("positive square with one pair pays for the two-edge cut") {
  const ProblemInstance inst = testing::c4_instance({1.0, 1.0, 1.0, 1.0}, {{0, 2}});
  for (Variant v : {Variant::kWidestPath, Variant::kNaive}) {
    SolverConfig config;
    config.variant = v;
    const SolveReport report = solve(inst, config);
    check_report(inst, report);
    CHECK(report.termination == Termination::kConverged);
    CHECK(report.best_ub == doctest::Approx(2.0));
    CHECK(report.best_lb == doctest::Approx(2.0));
    CHECK(report.ub_from_rounding);
  }
}

TEST_CASE("nonnegative costs with no pairs converge immediately to zero") {
  const ProblemInstance inst = testing::c4_instance({1.0, 2.0, 3.0, 4.0});
  const SolveReport report = solve(inst, SolverConfig{});
  check_report(inst, report);
  CHECK(report.termination == Termination::kConverged);
  CHECK(report.iterations == 1);
  CHECK(report.best_ub == 0.0);
  CHECK(report.best_lb == 0.0);
  CHECK(report.best_labeling->edge_cut == std::vector<std::uint8_t>{0, 0, 0, 0});
}

TEST_CASE("solve is deterministic run to run") {
  const ProblemInstance inst = generate_synthetic(11, 4, 4, 0.5, 3);
  for (Variant v : {Variant::kWidestPath, Variant::kNaive}) {
    SolverConfig config;
    config.variant = v;
    const SolveReport a = solve(inst, config);
    const SolveReport b = solve(inst, config);
    check_reports_equal(a, b);
  }
}

TEST_CASE("solved instances match the exhaustive optimum") {
  Rng rng(302);
  int integral_hits = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const EmbeddedPlanarGraph g = testing::random_planar_graph(rng, 2, 3, rng.uniform_int(0, 1));
    ProblemInstance inst;
    inst.graph = g;
    inst.theta = testing::random_integer_weights(rng, g.num_edges(), -3, 3);
    inst.pairs = testing::random_pairs(rng, g.num_nodes, rng.uniform_int(0, 2));
    const OptimalResult opt = brute_force_optimal(inst);

    for (Variant v : {Variant::kWidestPath, Variant::kNaive}) {
      SolverConfig config;
      config.variant = v;
      const SolveReport report = solve(inst, config);
      check_report(inst, report);
      // sandwich around the true optimum
      CHECK(report.best_lb <= opt.cost + 1e-6);
      if (report.best_labeling) CHECK(report.best_ub >= opt.cost - 1e-6);

      // integral, path-feasible convergence certifies optimality
      if (report.termination == Termination::kConverged) {
        bool integral = true;
        for (double x : report.final_edge_values) {
          integral = integral && (x <= 1e-6 || x >= 1.0 - 1e-6);
        }
        if (integral) {
          CHECK(report.best_ub == doctest::Approx(opt.cost).epsilon(1e-6));
          ++integral_hits;
        }
      }
    }
  }
  CHECK(integral_hits > 0);  // the sweep must actually exercise the certificate
}

TEST_CASE("iteration cap stops early but still reports bounds") {
  const ProblemInstance inst = generate_synthetic(13, 4, 4, 0.8, 3);
  SolverConfig config;
  config.max_iterations = 1;
  const SolveReport report = solve(inst, config);
  CHECK(report.iterations == 1);
  CHECK(report.trace.size() == 1);
  CHECK(report.best_lb > -kInf);
  if (report.termination != Termination::kConverged) {
    CHECK(report.termination == Termination::kIterationCap);
  }
}

TEST_CASE("time cap stops the loop almost immediately") {
  const ProblemInstance inst = generate_synthetic(13, 5, 5, 0.8, 4);
  SolverConfig config;
  config.time_limit_seconds = 1e-9;
  const SolveReport report = solve(inst, config);
  CHECK(report.termination == Termination::kTimeCap);
  CHECK(!report.trace.empty());
  CHECK(report.best_lb > -kInf);
}

TEST_CASE("stride delays rounding but the fallback still provides an upper bound") {
  const ProblemInstance inst = testing::c4_instance({-1.0, -1.0, -1.0, -1.0});
  SolverConfig config;
  config.bounds_stride = 100;  // round only on the first iteration
  const SolveReport report = solve(inst, config);
  check_report(inst, report);
  CHECK(report.termination == Termination::kConverged);
  CHECK(report.best_ub == doctest::Approx(-4.0));  // iteration-1 rounding of X = 0
}

TEST_CASE("invalid configurations are rejected") {
  const ProblemInstance inst = testing::c4_instance({1.0, 1.0, 1.0, 1.0});
  SolverConfig config;
  config.max_iterations = 0;
  CHECK_THROWS_AS(solve(inst, config), MulticutError);
  config = SolverConfig{};
  config.time_limit_seconds = 0.0;
  CHECK_THROWS_AS(solve(inst, config), MulticutError);
  config = SolverConfig{};
  config.mu_grid = {0.5, 1.5};
  CHECK_THROWS_AS(solve(inst, config), MulticutError);
  config = SolverConfig{};
  config.bounds_stride = 0;
  CHECK_THROWS_AS(solve(inst, config), MulticutError);
  config = SolverConfig{};
  config.tol_col = -1.0;
  CHECK_THROWS_AS(solve(inst, config), MulticutError);
}

TEST_CASE("theta mismatch is rejected up front") {
  ProblemInstance inst = testing::c4_instance({1.0, 1.0, 1.0, 1.0});
  inst.theta.pop_back();
  CHECK_THROWS_AS(solve(inst, SolverConfig{}), MulticutError);
}

TEST_CASE("lower bound always certifies below the dual objective path") {
  // on convergence: LB == dual objective + 1.5 * min(0, oracle) within tolerance
  const ProblemInstance inst = generate_synthetic(21, 4, 4, 0.5, 2);
  for (Variant v : {Variant::kWidestPath, Variant::kNaive}) {
    SolverConfig config;
    config.variant = v;
    const SolveReport report = solve(inst, config);
    check_report(inst, report);
    if (report.termination == Termination::kConverged) {
      const double certified =
          report.final_dual_objective + 1.5 * std::min(0.0, report.final_oracle_value);
      CHECK(report.best_lb >= certified - 1e-6 * (1.0 + std::abs(certified)));
    }
  }
}

TEST_CASE("bench runs both variants and combines lower bounds") {
  std::vector<std::pair<std::string, ProblemInstance>> instances;
  instances.emplace_back("a", testing::c4_instance({-1.0, -1.0, -1.0, -1.0}));
  instances.emplace_back("b", testing::c4_instance({1.0, 1.0, 1.0, 1.0}, {{0, 2}}));
  instances.emplace_back("c", generate_synthetic(5, 3, 3, 0.5, 2));

  const BenchTable table = bench(instances, BenchOptions{});
  REQUIRE(table.instances.size() == 3);
  CHECK(table.thresholds == std::vector<double>{0.125, 0.03125, 0.0078125});

  for (const auto& inst_result : table.instances) {
    REQUIRE(inst_result.outcomes.size() == 2);
    CHECK(inst_result.outcomes[0].variant == Variant::kWidestPath);
    CHECK(inst_result.outcomes[1].variant == Variant::kNaive);
    double max_lb = -kInf;
    for (const auto& outcome : inst_result.outcomes) {
      REQUIRE_FALSE(outcome.failed);
      max_lb = std::max(max_lb, outcome.lb);
      REQUIRE(outcome.time_to_threshold.size() == table.thresholds.size());
      CHECK(!outcome.gap_series.empty());
      // time-to-threshold entries are nondecreasing as thresholds tighten
      for (std::size_t t = 1; t < outcome.time_to_threshold.size(); ++t) {
        CHECK(outcome.time_to_threshold[t] >= outcome.time_to_threshold[t - 1]);
      }
    }
    CHECK(inst_result.combined_lb == doctest::Approx(max_lb));
  }
  CHECK(table.instances[0].num_pairs == 0);
  CHECK(table.instances[1].num_pairs == 1);

  // tiny instances converge to gap zero, so every curve ends at fraction 1
  REQUIRE(table.curves.size() == 2);
  for (const auto& per_variant : table.curves) {
    REQUIRE(per_variant.size() == table.thresholds.size());
    for (const auto& curve : per_variant) {
      REQUIRE(!curve.empty());
      CHECK(curve.back().fraction == doctest::Approx(1.0));
      for (std::size_t i = 1; i < curve.size(); ++i) {
        CHECK(curve[i].elapsed >= curve[i - 1].elapsed);
        CHECK(curve[i].fraction >= curve[i - 1].fraction);
      }
    }
  }
}

TEST_CASE("bench records per-instance failures without aborting") {
  std::vector<std::pair<std::string, ProblemInstance>> instances;
  instances.emplace_back("good", testing::c4_instance({1.0, 1.0, 1.0, 1.0}));
  ProblemInstance broken = testing::c4_instance({1.0, 1.0, 1.0, 1.0});
  broken.theta.pop_back();  // malformed: solve throws
  instances.emplace_back("bad", broken);

  const BenchTable table = bench(instances, BenchOptions{});
  REQUIRE(table.instances.size() == 2);
  CHECK_FALSE(table.instances[0].outcomes[0].failed);
  CHECK(table.instances[1].outcomes[0].failed);
  CHECK(table.instances[1].outcomes[1].failed);
  CHECK(!table.instances[1].outcomes[0].error.empty());
}

TEST_CASE("variant and termination names are stable") {
  CHECK(std::string(variant_name(Variant::kWidestPath)) == "widest_path");
  CHECK(std::string(variant_name(Variant::kNaive)) == "naive");
  CHECK(std::string(termination_name(Termination::kConverged)) == "converged");
  CHECK(std::string(termination_name(Termination::kIterationCap)) == "iteration_cap");
  CHECK(std::string(termination_name(Termination::kTimeCap)) == "time_cap");
}
