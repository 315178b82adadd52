#include "multicut/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace multicut {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void validate_config(const SolverConfig& config) {
  if (config.max_iterations < 1) throw MulticutError("config: max_iterations must be >= 1");
  if (!(config.time_limit_seconds > 0.0)) throw MulticutError("config: time limit must be positive");
  if (!(config.tol_col > 0.0) || !(config.tol_path > 0.0) || !(config.tol_gap > 0.0)) {
    throw MulticutError("config: tolerances must be positive");
  }
  if (config.mu_grid.empty()) throw MulticutError("config: mu grid must not be empty");
  for (double mu : config.mu_grid) {
    if (!(mu > 0.0 && mu < 1.0)) throw MulticutError("config: mu grid values must lie in (0,1)");
  }
  if (config.bounds_stride < 1) throw MulticutError("config: bounds stride must be >= 1");
}

MulticutLabeling all_singletons(const EmbeddedPlanarGraph& graph) {
  return labeling_from_cut(graph, std::vector<std::uint8_t>(graph.num_edges(), 1));
}

}  // namespace

const char* variant_name(Variant v) {
  return v == Variant::kWidestPath ? "widest_path" : "naive";
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::kConverged: return "converged";
    case Termination::kIterationCap: return "iteration_cap";
    default: return "time_cap";
  }
}

SolveReport solve(const ProblemInstance& instance, const SolverConfig& config) {
  validate_config(config);
  const auto t0 = std::chrono::steady_clock::now();

  SolveReport report;
  report.config = config;

  MasterState state;
  const int num_pairs = static_cast<int>(instance.pairs.size());
  double prev_objective = 0.0;
  int prev_cols = 0, prev_rows = 0;
  bool have_prev = false;
  bool stall_used = false;
  Termination term = Termination::kIterationCap;
  int iter = 0;

  while (true) {
    ++iter;
    solve_restricted_lp(instance, state);
    const double lp_obj = state.solution.objective;
    report.max_dual_box_violation =
        std::max(report.max_dual_box_violation, state.solution.max_dual_box_violation);

    // The restricted optimum can only improve with new columns (at fixed rows)
    // and only worsen with new rows (at fixed columns).
    const int cols_now = static_cast<int>(state.columns.size());
    const int rows_now = static_cast<int>(state.rows.size());
    if (have_prev) {
      const bool grew_cols = cols_now > prev_cols;
      const bool grew_rows = rows_now > prev_rows;
      const double tol = 1e-6 * (1.0 + std::abs(prev_objective));
      if (grew_cols && !grew_rows && lp_obj > prev_objective + tol) {
        throw MulticutError("internal error: LP objective increased after adding only columns");
      }
      if (grew_rows && !grew_cols && lp_obj < prev_objective - tol) {
        throw MulticutError("internal error: LP objective decreased after adding only rows");
      }
      if (!grew_cols && !grew_rows && std::abs(lp_obj - prev_objective) > tol) {
        throw MulticutError("internal error: LP objective moved with an unchanged LP");
      }
    }
    prev_objective = lp_obj;
    prev_cols = cols_now;
    prev_rows = rows_now;
    have_prev = true;

    reduce_slacks(instance, state);
    const std::vector<double> x = edge_values(instance, state);

    if ((iter - 1) % config.bounds_stride == 0) {
      if (auto cand = round_upper_bound(instance, x, config.mu_grid)) {
        const double cost = multicut_cost(instance.theta, cand->edge_cut);
        if (cost < report.best_ub) {
          report.best_ub = cost;
          report.best_labeling = std::move(*cand);
          report.ub_from_rounding = true;
        }
      }
    }

    const OracleOutcome oracle = find_violating_column(instance, state, config.tol_col);
    report.best_lb = std::max(
        report.best_lb,
        lower_bound_from_oracle(state.solution.lambda, state.solution.psi, oracle.value));

    std::vector<std::optional<PathSearchResult>> violated(num_pairs);
    bool any_violated_path = false;
    for (int p = 0; p < num_pairs; ++p) {
      violated[p] = shortest_violated_path(instance.graph, x, instance.pairs[p].first,
                                           instance.pairs[p].second, config.tol_path);
      any_violated_path = any_violated_path || violated[p].has_value();
    }

    TraceRow row;
    row.iteration = iter;
    row.elapsed = seconds_since(t0);
    row.lp_objective = lp_obj;
    row.oracle_value = oracle.value;
    row.ub = report.best_ub;
    row.lb = report.best_lb;
    row.columns = cols_now;
    row.rows = rows_now;
    report.trace.push_back(row);

    report.final_lp_objective = lp_obj;
    report.final_dual_objective = state.solution.dual_objective;
    report.final_oracle_value = oracle.value;
    report.final_edge_values = x;

    MULTICUT_LOG_DEBUG("iter %d obj %.9g oracle %.9g ub %.9g lb %.9g cols %d rows %d", iter,
                       lp_obj, oracle.value, row.ub, row.lb, cols_now, rows_now);

    if (!oracle.violating && !any_violated_path) {
      term = Termination::kConverged;
      break;
    }

    bool progress = false;
    // nu depends on this iterate's duals; compute it before column additions
    // mark the state as unsolved
    std::vector<double> nu;
    if (config.variant == Variant::kWidestPath) nu = compute_nu(instance, state);
    if (oracle.violating) {
      for (auto& iso : isolating_cuts(instance.graph, oracle.cut)) {
        progress = add_column(state, std::move(iso)) || progress;
      }
    }
    if (config.variant == Variant::kWidestPath) {
      for (int p = 0; p < num_pairs; ++p) {
        const auto [a, b] = instance.pairs[p];
        const auto wide = widest_path(instance.graph, nu, a, b);
        if (wide) {
          progress = add_row(instance, state, make_path_row(instance, p, wide->edges)) || progress;
        }
        if (violated[p] && (!wide || wide->edges != violated[p]->edges)) {
          progress =
              add_row(instance, state, make_path_row(instance, p, violated[p]->edges)) || progress;
        }
      }
    } else {
      for (int p = 0; p < num_pairs; ++p) {
        if (violated[p]) {
          progress =
              add_row(instance, state, make_path_row(instance, p, violated[p]->edges)) || progress;
        }
      }
    }

    if (!progress) {
      // Every candidate is already present: residual violations are tolerance
      // noise. Re-solve once from a fresh factorization, then stop.
      if (!stall_used) {
        stall_used = true;
        state.warm_basis.clear();
        MULTICUT_LOG_INFO("iteration %d made no progress; refactorizing once", iter);
      } else {
        MULTICUT_LOG_INFO("iteration %d made no progress again; stopping at tolerance", iter);
        term = Termination::kConverged;
        break;
      }
    }

    if (seconds_since(t0) > config.time_limit_seconds) {
      term = Termination::kTimeCap;
      break;
    }
    if (iter >= config.max_iterations) {
      term = Termination::kIterationCap;
      break;
    }
  }

  report.termination = term;
  report.iterations = iter;
  report.num_columns = static_cast<int>(state.columns.size());
  report.num_rows = static_cast<int>(state.rows.size());
  report.lp_pivots = state.lp_pivots;
  if ((iter - 1) % config.bounds_stride != 0) {
    // the stride skipped the final iterate; round it now so the reported UB
    // reflects the last LP solution (the final trace row covers this iteration)
    if (auto cand = round_upper_bound(instance, report.final_edge_values, config.mu_grid)) {
      const double cost = multicut_cost(instance.theta, cand->edge_cut);
      if (cost < report.best_ub) {
        report.best_ub = cost;
        report.best_labeling = std::move(*cand);
        report.ub_from_rounding = true;
        report.trace.back().ub = report.best_ub;
      }
    }
  }
  if (!report.best_labeling) {
    MulticutLabeling fallback = all_singletons(instance.graph);
    report.best_ub = multicut_cost(instance.theta, fallback.edge_cut);
    report.best_labeling = std::move(fallback);
    report.ub_from_rounding = false;
    report.trace.back().ub = report.best_ub;
  }
  report.elapsed = seconds_since(t0);
  MULTICUT_LOG_INFO("%s: %s after %d iterations, UB %.9g LB %.9g gap %.3g, %d cols %d rows",
                    variant_name(config.variant), termination_name(term), iter, report.best_ub,
                    report.best_lb, report.gap(), report.num_columns, report.num_rows);
  return report;
}

BenchTable bench(const std::vector<std::pair<std::string, ProblemInstance>>& instances,
                 const BenchOptions& options) {
  if (instances.empty()) throw MulticutError("bench requires at least one instance");
  if (options.thresholds.empty()) throw MulticutError("bench requires at least one threshold");

  const std::vector<Variant> variants = {Variant::kWidestPath, Variant::kNaive};
  BenchTable table;
  table.thresholds = options.thresholds;

  for (const auto& [name, inst] : instances) {
    BenchInstanceResult res;
    res.name = name;
    res.num_pairs = static_cast<int>(inst.pairs.size());

    std::vector<std::optional<SolveReport>> reports(variants.size());
    for (std::size_t v = 0; v < variants.size(); ++v) {
      BenchVariantOutcome out;
      out.variant = variants[v];
      SolverConfig cfg = options.base_config;
      cfg.variant = variants[v];
      try {
        reports[v] = solve(inst, cfg);
      } catch (const std::exception& ex) {
        out.failed = true;
        out.error = ex.what();
      }
      res.outcomes.push_back(std::move(out));
    }

    res.combined_lb = -kInf;
    for (const auto& rep : reports) {
      if (rep) res.combined_lb = std::max(res.combined_lb, rep->best_lb);
    }

    for (std::size_t v = 0; v < variants.size(); ++v) {
      BenchVariantOutcome& out = res.outcomes[v];
      out.time_to_threshold.assign(options.thresholds.size(), kInf);
      if (!reports[v]) continue;
      const SolveReport& rep = *reports[v];
      out.termination = rep.termination;
      out.ub = rep.best_ub;
      out.lb = rep.best_lb;
      out.elapsed = rep.elapsed;
      out.iterations = rep.iterations;
      out.final_gap = normalized_gap(rep.best_ub, res.combined_lb);
      for (const TraceRow& row : rep.trace) {
        out.gap_series.emplace_back(row.elapsed, normalized_gap(row.ub, res.combined_lb));
      }
      out.gap_series.emplace_back(rep.elapsed, out.final_gap);
      for (std::size_t t = 0; t < options.thresholds.size(); ++t) {
        for (const auto& [elapsed, gap] : out.gap_series) {
          if (gap <= options.thresholds[t]) {
            out.time_to_threshold[t] = elapsed;
            break;
          }
        }
      }
    }
    table.instances.push_back(std::move(res));
  }

  // Solved-proportion-vs-time curve per (variant, threshold).
  const double n = static_cast<double>(table.instances.size());
  table.curves.assign(variants.size(),
                      std::vector<std::vector<BenchCurvePoint>>(options.thresholds.size()));
  for (std::size_t v = 0; v < variants.size(); ++v) {
    for (std::size_t t = 0; t < options.thresholds.size(); ++t) {
      std::vector<double> times;
      for (const auto& res : table.instances) {
        const double tt = res.outcomes[v].time_to_threshold[t];
        if (tt < kInf) times.push_back(tt);
      }
      std::sort(times.begin(), times.end());
      auto& curve = table.curves[v][t];
      for (std::size_t i = 0; i < times.size(); ++i) {
        curve.push_back({times[i], static_cast<double>(i + 1) / n});
      }
    }
  }
  return table;
}

}  // namespace multicut
