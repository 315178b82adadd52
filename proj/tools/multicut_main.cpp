// Command-line surface for the planar multicut solver:
//   generate  write a synthetic grid instance
//   solve     run the column/row-generation solver, emit report + trace + labels
//   verify    cross-check solver bounds against brute force on small instances
//   bench     run both variants over a directory of instances
//
// Exit codes: 0 success/converged, 2 input or guard error, 3 cap hit with
// valid bounds, 4 internal error. Diagnostics go to stderr (MULTICUT_LOG).

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "multicut/bounds.hpp"
#include "multicut/driver.hpp"
#include "multicut/instance.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;
constexpr int kExitInternal = 4;

json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct SolveFlags {
  std::string input;
  std::string variant = "alg1";
  std::string out_dir = ".";
  int max_iters = 1000;
  double time_limit = std::numeric_limits<double>::infinity();
  int stride = 1;
  std::uint64_t seed = 0;
};

struct GenerateFlags {
  int rows = 4, cols = 4;
  double noise = 0.5;
  int pairs = 0;
  std::uint64_t seed = 1;
  std::string out;
};

struct VerifyFlags {
  std::string input;
  std::string variant = "alg1";
  int max_iters = 1000;
  double time_limit = std::numeric_limits<double>::infinity();
};

struct BenchFlags {
  std::string suite;
  std::string out_dir = ".";
  int max_iters = 1000;
  double time_limit = 10.0;
  std::vector<double> thresholds = {0.125, 0.03125, 0.0078125};
  bool group_by_pairs = false;
  std::uint64_t seed = 0;
};

multicut::Variant variant_from_flag(const std::string& flag) {
  // alg1 pursues widest paths; alg2 is the naive shortest-path-only variant.
  return flag == "alg2" ? multicut::Variant::kNaive : multicut::Variant::kWidestPath;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw multicut::ParseError("cannot write " + path.string());
  return out;
}

json config_json(const multicut::SolverConfig& config) {
  json j;
  j["variant"] = multicut::variant_name(config.variant);
  j["max_iterations"] = config.max_iterations;
  j["time_limit_seconds"] = finite_or_null(config.time_limit_seconds);
  j["tol_col"] = config.tol_col;
  j["tol_path"] = config.tol_path;
  j["tol_gap"] = config.tol_gap;
  j["mu_grid"] = config.mu_grid;
  j["bounds_stride"] = config.bounds_stride;
  j["seed"] = config.seed;
  return j;
}

void write_artifacts(const fs::path& dir, const std::string& input,
                     const multicut::ProblemInstance& instance,
                     const multicut::SolveReport& report) {
  fs::create_directories(dir);

  json j;
  j["instance"] = input;
  j["nodes"] = instance.graph.num_nodes;
  j["edges"] = instance.graph.num_edges();
  j["faces"] = instance.graph.num_faces();
  j["pairs"] = instance.pairs.size();
  j["config"] = config_json(report.config);
  j["termination"] = multicut::termination_name(report.termination);
  j["iterations"] = report.iterations;
  j["elapsed_seconds"] = report.elapsed;
  j["ub"] = finite_or_null(report.best_ub);
  j["lb"] = finite_or_null(report.best_lb);
  j["gap"] = finite_or_null(report.gap());
  j["ub_from_rounding"] = report.ub_from_rounding;
  j["final_lp_objective"] = report.final_lp_objective;
  j["final_dual_objective"] = report.final_dual_objective;
  j["final_oracle_value"] = report.final_oracle_value;
  j["max_dual_box_violation"] = report.max_dual_box_violation;
  j["num_columns"] = report.num_columns;
  j["num_rows"] = report.num_rows;
  j["lp_pivots"] = report.lp_pivots;
  j["final_edge_values"] = report.final_edge_values;
  if (report.best_labeling) {
    j["ub_cut"] = report.best_labeling->edge_cut;
    j["component_of"] = report.best_labeling->component_of;
  }
  open_out(dir / "report.json") << j.dump(2) << "\n";

  auto trace = open_out(dir / "trace.csv");
  trace << "elapsed,UB,LB,GAP,columns,rows\n";
  for (const auto& row : report.trace) {
    trace << fmt(row.elapsed) << ',' << fmt(row.ub) << ',' << fmt(row.lb) << ','
          << fmt(multicut::normalized_gap(row.ub, row.lb)) << ',' << row.columns << ','
          << row.rows << '\n';
  }

  auto labels = open_out(dir / "labels.csv");
  labels << "node,component\n";
  if (report.best_labeling) {
    const auto& comp = report.best_labeling->component_of;
    for (std::size_t v = 0; v < comp.size(); ++v) labels << v << ',' << comp[v] << '\n';
  }
}

int run_generate(const GenerateFlags& flags) {
  multicut::ProblemInstance instance =
      multicut::generate_synthetic(flags.seed, flags.rows, flags.cols, flags.noise, flags.pairs);
  multicut::write_instance_file(instance, flags.out);
  std::printf("wrote %s: nodes %d edges %d faces %d pairs %zu\n", flags.out.c_str(),
              instance.graph.num_nodes, instance.graph.num_edges(), instance.graph.num_faces(),
              instance.pairs.size());
  return kExitOk;
}

int run_solve(const SolveFlags& flags) {
  multicut::ProblemInstance instance = multicut::parse_instance_file(flags.input);

  multicut::SolverConfig config;
  config.variant = variant_from_flag(flags.variant);
  config.max_iterations = flags.max_iters;
  config.time_limit_seconds = flags.time_limit;
  config.bounds_stride = flags.stride;
  config.seed = flags.seed;

  multicut::SolveReport report;
  try {
    report = multicut::solve(instance, config);
  } catch (const multicut::MulticutError& ex) {
    std::fprintf(stderr, "solver error: %s\n", ex.what());
    return kExitInternal;
  }
  write_artifacts(flags.out_dir, flags.input, instance, report);
  std::printf("%s: %s after %d iterations, UB %s LB %s GAP %s\n", flags.variant.c_str(),
              multicut::termination_name(report.termination), report.iterations,
              fmt(report.best_ub).c_str(), fmt(report.best_lb).c_str(),
              fmt(report.gap()).c_str());
  return report.termination == multicut::Termination::kConverged ? kExitOk : kExitCap;
}

int run_verify(const VerifyFlags& flags) {
  multicut::ProblemInstance instance = multicut::parse_instance_file(flags.input);
  if (instance.graph.num_nodes > 12) {
    std::fprintf(stderr, "verify supports at most 12 nodes, got %d\n",
                 instance.graph.num_nodes);
    return kExitInput;
  }

  multicut::SolverConfig config;
  config.variant = variant_from_flag(flags.variant);
  config.max_iterations = flags.max_iters;
  config.time_limit_seconds = flags.time_limit;

  multicut::SolveReport report;
  multicut::OptimalResult opt;
  multicut::CycCheckResult cyc;
  try {
    report = multicut::solve(instance, config);
    opt = multicut::brute_force_optimal(instance);
    cyc = multicut::cyc_membership_check(instance.graph, report.final_edge_values);
  } catch (const multicut::MulticutError& ex) {
    std::fprintf(stderr, "verify error: %s\n", ex.what());
    return kExitInternal;
  }

  const double tol = 1e-6 * (1.0 + std::abs(opt.cost));
  const bool sandwich = report.best_lb <= opt.cost + tol && opt.cost <= report.best_ub + tol;
  const bool pass = sandwich && cyc.member;
  std::printf("OPT %s\n", fmt(opt.cost).c_str());
  std::printf("UB %s\n", fmt(report.best_ub).c_str());
  std::printf("LB %s\n", fmt(report.best_lb).c_str());
  std::printf("CYC %s\n", cyc.member ? "pass" : "fail");
  std::printf("VERDICT %s\n", pass ? "pass" : "fail");
  return pass ? kExitOk : kExitInternal;
}

int run_bench(const BenchFlags& flags) {
  std::vector<fs::path> paths;
  if (fs::is_directory(flags.suite)) {
    for (const auto& entry : fs::directory_iterator(flags.suite)) {
      if (entry.is_regular_file()) paths.push_back(entry.path());
    }
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) {
    std::fprintf(stderr, "bench: no instance files in %s\n", flags.suite.c_str());
    return kExitInput;
  }

  std::vector<std::pair<std::string, multicut::ProblemInstance>> instances;
  for (const auto& path : paths) {
    try {
      instances.emplace_back(path.filename().string(), multicut::parse_instance_file(path.string()));
    } catch (const multicut::ParseError& ex) {
      std::fprintf(stderr, "bench: %s: %s\n", path.string().c_str(), ex.what());
      return kExitInput;
    }
  }

  multicut::BenchOptions options;
  options.base_config.max_iterations = flags.max_iters;
  options.base_config.time_limit_seconds = flags.time_limit;
  options.base_config.seed = flags.seed;
  options.thresholds = flags.thresholds;
  const multicut::BenchTable table = multicut::bench(instances, options);

  const fs::path dir(flags.out_dir);
  fs::create_directories(dir);

  auto csv = open_out(dir / "table.csv");
  csv << "instance,pairs,variant,status,termination,iterations,elapsed,UB,LB,combined_LB,GAP\n";
  for (const auto& res : table.instances) {
    for (const auto& out : res.outcomes) {
      csv << res.name << ',' << res.num_pairs << ',' << multicut::variant_name(out.variant) << ',';
      if (out.failed) {
        csv << "failed,,,,,," << '\n';
        continue;
      }
      csv << "ok," << multicut::termination_name(out.termination) << ',' << out.iterations << ','
          << fmt(out.elapsed) << ',' << fmt(out.ub) << ',' << fmt(out.lb) << ','
          << fmt(res.combined_lb) << ',' << fmt(out.final_gap) << '\n';
    }
  }

  for (std::size_t t = 0; t < table.thresholds.size(); ++t) {
    char name[64];
    std::snprintf(name, sizeof(name), "solved_curve_%g.csv", table.thresholds[t]);
    auto curve = open_out(dir / name);
    curve << "variant,elapsed,fraction\n";
    for (std::size_t v = 0; v < table.curves.size(); ++v) {
      const auto variant = v == 0 ? multicut::Variant::kWidestPath : multicut::Variant::kNaive;
      for (const auto& point : table.curves[v][t]) {
        curve << multicut::variant_name(variant) << ',' << fmt(point.elapsed) << ','
              << fmt(point.fraction) << '\n';
      }
    }
  }

  json j;
  j["thresholds"] = table.thresholds;
  j["instances"] = json::array();
  for (const auto& res : table.instances) {
    json ji;
    ji["name"] = res.name;
    ji["pairs"] = res.num_pairs;
    ji["combined_lb"] = finite_or_null(res.combined_lb);
    ji["runs"] = json::array();
    for (const auto& out : res.outcomes) {
      json jr;
      jr["variant"] = multicut::variant_name(out.variant);
      jr["failed"] = out.failed;
      if (out.failed) {
        jr["error"] = out.error;
      } else {
        jr["termination"] = multicut::termination_name(out.termination);
        jr["iterations"] = out.iterations;
        jr["elapsed"] = out.elapsed;
        jr["ub"] = finite_or_null(out.ub);
        jr["lb"] = finite_or_null(out.lb);
        jr["gap"] = finite_or_null(out.final_gap);
        json times = json::array();
        for (double tt : out.time_to_threshold) times.push_back(finite_or_null(tt));
        jr["time_to_threshold"] = times;
      }
      ji["runs"].push_back(std::move(jr));
    }
    j["instances"].push_back(std::move(ji));
  }

  if (flags.group_by_pairs) {
    // Aggregate per (pair count, variant): run counts, convergence rate, means.
    auto groups = open_out(dir / "groups.csv");
    groups << "pairs,variant,instances,converged,mean_elapsed,mean_GAP\n";
    std::vector<int> counts;
    for (const auto& res : table.instances) counts.push_back(res.num_pairs);
    std::sort(counts.begin(), counts.end());
    counts.erase(std::unique(counts.begin(), counts.end()), counts.end());
    json jg = json::array();
    for (int pc : counts) {
      for (std::size_t v = 0; v < 2; ++v) {
        int total = 0, converged = 0;
        double sum_elapsed = 0.0, sum_gap = 0.0;
        int gap_n = 0;
        for (const auto& res : table.instances) {
          if (res.num_pairs != pc) continue;
          const auto& out = res.outcomes[v];
          if (out.failed) continue;
          ++total;
          sum_elapsed += out.elapsed;
          if (out.termination == multicut::Termination::kConverged) ++converged;
          if (std::isfinite(out.final_gap)) {
            sum_gap += out.final_gap;
            ++gap_n;
          }
        }
        if (total == 0) continue;
        const auto variant = v == 0 ? multicut::Variant::kWidestPath : multicut::Variant::kNaive;
        const double mean_elapsed = sum_elapsed / total;
        const double mean_gap = gap_n > 0 ? sum_gap / gap_n : 0.0;
        groups << pc << ',' << multicut::variant_name(variant) << ',' << total << ','
               << converged << ',' << fmt(mean_elapsed) << ',' << fmt(mean_gap) << '\n';
        json row;
        row["pairs"] = pc;
        row["variant"] = multicut::variant_name(variant);
        row["instances"] = total;
        row["converged"] = converged;
        row["mean_elapsed"] = mean_elapsed;
        row["mean_GAP"] = mean_gap;
        jg.push_back(std::move(row));
      }
    }
    j["groups"] = std::move(jg);
  }
  open_out(dir / "summary.json") << j.dump(2) << "\n";

  std::printf("bench: %zu instances x 2 variants -> %s\n", table.instances.size(),
              flags.out_dir.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar correlation-clustering (multicut) solver with long-range pair constraints"};
  app.require_subcommand(1);

  GenerateFlags gen;
  CLI::App* cmd_gen = app.add_subcommand("generate", "Write a synthetic grid instance");
  cmd_gen->add_option("--rows", gen.rows, "Grid rows")->required();
  cmd_gen->add_option("--cols", gen.cols, "Grid columns")->required();
  cmd_gen->add_option("--noise", gen.noise, "Edge weight noise amplitude");
  cmd_gen->add_option("--pairs", gen.pairs, "Number of repulsive pairs");
  cmd_gen->add_option("--seed", gen.seed, "RNG seed");
  cmd_gen->add_option("--out", gen.out, "Output instance file")->required();

  SolveFlags sol;
  CLI::App* cmd_sol = app.add_subcommand("solve", "Solve an instance file");
  cmd_sol->add_option("--in", sol.input, "Instance file")->required();
  cmd_sol->add_option("--variant", sol.variant, "alg1 = widest-path rows, alg2 = naive")
      ->check(CLI::IsMember({"alg1", "alg2"}));
  cmd_sol->add_option("--max-iters", sol.max_iters, "Iteration cap")->check(CLI::PositiveNumber);
  cmd_sol->add_option("--time-limit", sol.time_limit, "Wall-clock cap in seconds")
      ->check(CLI::PositiveNumber);
  cmd_sol->add_option("--stride", sol.stride, "Rounding pass stride")->check(CLI::PositiveNumber);
  cmd_sol->add_option("--seed", sol.seed, "Seed recorded in the report");
  cmd_sol->add_option("--out-dir", sol.out_dir, "Directory for report.json/trace.csv/labels.csv");

  VerifyFlags ver;
  CLI::App* cmd_ver = app.add_subcommand("verify", "Check bounds against brute force (<= 12 nodes)");
  cmd_ver->add_option("--in", ver.input, "Instance file")->required();
  cmd_ver->add_option("--variant", ver.variant, "alg1 or alg2")
      ->check(CLI::IsMember({"alg1", "alg2"}));
  cmd_ver->add_option("--max-iters", ver.max_iters, "Iteration cap")->check(CLI::PositiveNumber);
  cmd_ver->add_option("--time-limit", ver.time_limit, "Wall-clock cap in seconds")
      ->check(CLI::PositiveNumber);

  BenchFlags ben;
  CLI::App* cmd_ben = app.add_subcommand("bench", "Run both variants over a directory of instances");
  cmd_ben->add_option("--suite", ben.suite, "Directory of instance files")->required();
  cmd_ben->add_option("--out-dir", ben.out_dir, "Directory for table/curves/summary");
  cmd_ben->add_option("--max-iters", ben.max_iters, "Iteration cap per run")
      ->check(CLI::PositiveNumber);
  cmd_ben->add_option("--time-limit", ben.time_limit, "Wall-clock cap per run in seconds")
      ->check(CLI::PositiveNumber);
  cmd_ben->add_option("--thresholds", ben.thresholds, "GAP thresholds for the curves")
      ->check(CLI::PositiveNumber);
  cmd_ben->add_flag("--group-by-pairs", ben.group_by_pairs, "Also aggregate by pair count");
  cmd_ben->add_option("--seed", ben.seed, "Seed recorded in the reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (cmd_gen->parsed()) return run_generate(gen);
    if (cmd_sol->parsed()) return run_solve(sol);
    if (cmd_ver->parsed()) return run_verify(ver);
    return run_bench(ben);
  } catch (const multicut::ParseError& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return kExitInput;
  } catch (const multicut::MulticutError& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return kExitInput;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "internal error: %s\n", ex.what());
    return kExitInternal;
  }
}
