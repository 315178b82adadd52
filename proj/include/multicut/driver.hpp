#pragma once

#include <optional>
#include <string>
#include <vector>

#include "multicut/bounds.hpp"
#include "multicut/master.hpp"
#include "multicut/separation.hpp"

namespace multicut {

enum class Variant {
  kWidestPath,  // per pair: widest-path row plus the shortest violated path when it differs
  kNaive,       // per pair: shortest violated path only
};

enum class Termination { kConverged, kIterationCap, kTimeCap };

const char* variant_name(Variant v);
const char* termination_name(Termination t);

struct SolverConfig {
  Variant variant = Variant::kWidestPath;
  int max_iterations = 1000;
  double time_limit_seconds = std::numeric_limits<double>::infinity();
  double tol_col = kTolColumn;
  double tol_path = kTolPath;
  double tol_gap = kTolGap;
  std::vector<double> mu_grid = {0.2, 0.4, 0.6, 0.8};
  int bounds_stride = 1;  // run the rounding pass every k-th iteration (the
                          // final iterate is always rounded before reporting)
  std::uint64_t seed = 0; // recorded for reproducibility; the loop itself is deterministic
};

struct TraceRow {
  int iteration = 0;
  double elapsed = 0.0;       // seconds since solve start, at LP solve completion
  double lp_objective = 0.0;
  double oracle_value = 0.0;  // min cut value under theta + lambda - S'psi
  double ub = 0.0;            // best so far (inf until a labeling exists)
  double lb = 0.0;            // best so far
  int columns = 0;
  int rows = 0;
};

struct SolveReport {
  SolverConfig config;
  Termination termination = Termination::kConverged;
  int iterations = 0;
  double elapsed = 0.0;

  double best_ub = std::numeric_limits<double>::infinity();
  std::optional<MulticutLabeling> best_labeling;
  bool ub_from_rounding = false;  // false when only the all-singletons fallback fired
  double best_lb = -std::numeric_limits<double>::infinity();

  double final_lp_objective = 0.0;
  double final_dual_objective = 0.0;
  double final_oracle_value = 0.0;
  double max_dual_box_violation = 0.0;
  std::vector<double> final_edge_values;  // reduced min(1, Z gamma + kappa)

  int num_columns = 0;
  int num_rows = 0;
  long lp_pivots = 0;
  std::vector<TraceRow> trace;

  double gap() const { return normalized_gap(best_ub, best_lb); }
};

// Column-generation / row-generation main loop. Deterministic for a fixed
// (instance, config).
SolveReport solve(const ProblemInstance& instance, const SolverConfig& config);

// ----- benchmarking -------------------------------------------------------

struct BenchVariantOutcome {
  Variant variant = Variant::kWidestPath;
  bool failed = false;
  std::string error;          // set when failed
  Termination termination = Termination::kConverged;
  double ub = 0.0, lb = 0.0;  // final bounds of this variant's run
  double elapsed = 0.0;
  int iterations = 0;
  double final_gap = 0.0;     // against the combined per-instance lower bound
  // first wall-clock time at which GAP(t) <= threshold, one per threshold
  // (infinity when the run never reaches it)
  std::vector<double> time_to_threshold;
  std::vector<std::pair<double, double>> gap_series;  // (elapsed, GAP against combined LB)
};

struct BenchInstanceResult {
  std::string name;
  int num_pairs = 0;
  double combined_lb = 0.0;  // max of the two variants' final lower bounds
  std::vector<BenchVariantOutcome> outcomes;  // widest-path first, then naive
};

struct BenchCurvePoint {
  double elapsed = 0.0;
  double fraction = 0.0;  // proportion of instances at or below the threshold
};

struct BenchTable {
  std::vector<double> thresholds;
  std::vector<BenchInstanceResult> instances;
  // curves[v][t] = solved-proportion curve of variant v at thresholds[t]
  std::vector<std::vector<std::vector<BenchCurvePoint>>> curves;
};

struct BenchOptions {
  SolverConfig base_config;  // variant is overridden per run
  std::vector<double> thresholds = {0.125, 0.03125, 0.0078125};  // 2^-3, 2^-5, 2^-7
};

// Runs both variants on every instance; per-instance lower bound is the max
// across variants and every GAP uses it. Per-instance failures are recorded
// in the table, never thrown.
BenchTable bench(const std::vector<std::pair<std::string, ProblemInstance>>& instances,
                 const BenchOptions& options);

}  // namespace multicut
