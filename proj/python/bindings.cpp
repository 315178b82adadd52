// Python bindings for the planar multicut solver: instance I/O, the
// column/row-generation solver, and the verification helpers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>

#include "multicut/bounds.hpp"
#include "multicut/driver.hpp"
#include "multicut/instance.hpp"
#include "multicut/oracle.hpp"

namespace py = pybind11;

namespace {

multicut::Variant variant_from_string(const std::string& name) {
  if (name == "widest_path" || name == "alg1") return multicut::Variant::kWidestPath;
  if (name == "naive" || name == "alg2") return multicut::Variant::kNaive;
  throw multicut::MulticutError("unknown variant '" + name +
                                "' (expected widest_path/alg1 or naive/alg2)");
}

}  // namespace

PYBIND11_MODULE(_planarmulticut, m) {
  m.doc() = "Planar correlation clustering (multicut) with long-range repulsive pair constraints";

  py::register_exception<multicut::MulticutError>(m, "MulticutError");

  py::class_<multicut::MulticutLabeling>(m, "MulticutLabeling")
      .def_readonly("edge_cut", &multicut::MulticutLabeling::edge_cut)
      .def_readonly("component_of", &multicut::MulticutLabeling::component_of)
      .def("__repr__", [](const multicut::MulticutLabeling& l) {
        int comps = 0;
        for (int c : l.component_of) comps = std::max(comps, c + 1);
        return "<MulticutLabeling components=" + std::to_string(comps) + ">";
      });

  py::class_<multicut::ProblemInstance>(m, "ProblemInstance")
      .def_property_readonly(
          "num_nodes", [](const multicut::ProblemInstance& p) { return p.graph.num_nodes; })
      .def_property_readonly(
          "num_edges", [](const multicut::ProblemInstance& p) { return p.graph.num_edges(); })
      .def_property_readonly(
          "num_faces", [](const multicut::ProblemInstance& p) { return p.graph.num_faces(); })
      .def_property_readonly("edges",
                             [](const multicut::ProblemInstance& p) { return p.graph.edges; })
      .def_readonly("theta", &multicut::ProblemInstance::theta)
      .def_readonly("pairs", &multicut::ProblemInstance::pairs)
      .def("__repr__", [](const multicut::ProblemInstance& p) {
        return "<ProblemInstance nodes=" + std::to_string(p.graph.num_nodes) +
               " edges=" + std::to_string(p.graph.num_edges()) +
               " pairs=" + std::to_string(p.pairs.size()) + ">";
      });

  py::class_<multicut::TraceRow>(m, "TraceRow")
      .def_readonly("iteration", &multicut::TraceRow::iteration)
      .def_readonly("elapsed", &multicut::TraceRow::elapsed)
      .def_readonly("lp_objective", &multicut::TraceRow::lp_objective)
      .def_readonly("oracle_value", &multicut::TraceRow::oracle_value)
      .def_readonly("ub", &multicut::TraceRow::ub)
      .def_readonly("lb", &multicut::TraceRow::lb)
      .def_readonly("columns", &multicut::TraceRow::columns)
      .def_readonly("rows", &multicut::TraceRow::rows);

  py::class_<multicut::SolveReport>(m, "SolveReport")
      .def_property_readonly("termination",
                             [](const multicut::SolveReport& r) {
                               return std::string(multicut::termination_name(r.termination));
                             })
      .def_property_readonly("variant",
                             [](const multicut::SolveReport& r) {
                               return std::string(multicut::variant_name(r.config.variant));
                             })
      .def_readonly("iterations", &multicut::SolveReport::iterations)
      .def_readonly("elapsed", &multicut::SolveReport::elapsed)
      .def_readonly("ub", &multicut::SolveReport::best_ub)
      .def_readonly("lb", &multicut::SolveReport::best_lb)
      .def_readonly("labeling", &multicut::SolveReport::best_labeling)
      .def_readonly("ub_from_rounding", &multicut::SolveReport::ub_from_rounding)
      .def_readonly("final_lp_objective", &multicut::SolveReport::final_lp_objective)
      .def_readonly("final_dual_objective", &multicut::SolveReport::final_dual_objective)
      .def_readonly("final_oracle_value", &multicut::SolveReport::final_oracle_value)
      .def_readonly("max_dual_box_violation", &multicut::SolveReport::max_dual_box_violation)
      .def_readonly("final_edge_values", &multicut::SolveReport::final_edge_values)
      .def_readonly("num_columns", &multicut::SolveReport::num_columns)
      .def_readonly("num_rows", &multicut::SolveReport::num_rows)
      .def_readonly("lp_pivots", &multicut::SolveReport::lp_pivots)
      .def_readonly("trace", &multicut::SolveReport::trace)
      .def("gap", &multicut::SolveReport::gap)
      .def("__repr__", [](const multicut::SolveReport& r) {
        return "<SolveReport " + std::string(multicut::termination_name(r.termination)) +
               " ub=" + std::to_string(r.best_ub) + " lb=" + std::to_string(r.best_lb) + ">";
      });

  m.def("parse_instance", &multicut::parse_instance, py::arg("text"),
        "Parse an instance from its text form");
  m.def("load_instance", &multicut::parse_instance_file, py::arg("path"),
        "Read an instance file");
  m.def("serialize_instance", &multicut::serialize_instance, py::arg("instance"),
        "Canonical text form of an instance");
  m.def("save_instance", &multicut::write_instance_file, py::arg("instance"), py::arg("path"),
        "Write an instance file");
  m.def("generate", &multicut::generate_synthetic, py::arg("seed"), py::arg("rows"),
        py::arg("cols"), py::arg("noise"), py::arg("pairs"),
        "Synthetic grid instance with planted regions and cross-region pairs");

  m.def(
      "solve",
      [](const multicut::ProblemInstance& instance, const std::string& variant,
         int max_iterations, double time_limit, int stride, std::uint64_t seed) {
        multicut::SolverConfig config;
        config.variant = variant_from_string(variant);
        config.max_iterations = max_iterations;
        config.time_limit_seconds = time_limit;
        config.bounds_stride = stride;
        config.seed = seed;
        return multicut::solve(instance, config);
      },
      py::arg("instance"), py::arg("variant") = "widest_path", py::arg("max_iterations") = 1000,
      py::arg("time_limit") = std::numeric_limits<double>::infinity(), py::arg("stride") = 1,
      py::arg("seed") = 0, "Run the column/row-generation solver");

  m.def(
      "brute_force_optimal",
      [](const multicut::ProblemInstance& instance) {
        auto result = multicut::brute_force_optimal(instance);
        return py::make_tuple(result.labeling, result.cost);
      },
      py::arg("instance"), "Exhaustive optimum over node partitions (at most 12 nodes)");

  m.def(
      "round_upper_bound",
      [](const multicut::ProblemInstance& instance, const std::vector<double>& x) {
        return multicut::round_upper_bound(instance, x);
      },
      py::arg("instance"), py::arg("x"),
      "Threshold-and-repair rounding of fractional edge values; None when infeasible");

  m.def(
      "cyc_membership_check",
      [](const multicut::ProblemInstance& instance, const std::vector<double>& x) {
        auto result = multicut::cyc_membership_check(instance.graph, x);
        py::object witness = py::none();
        if (result.witness) {
          witness = py::make_tuple(result.witness->pivot_edge, result.witness->cycle_edges);
        }
        return py::make_tuple(result.member, witness);
      },
      py::arg("instance"), py::arg("x"),
      "(member, witness) for the cycle inequalities; witness is (pivot edge, cycle edges)");

  m.def(
      "min_two_colorable_cut",
      [](const multicut::ProblemInstance& instance, const std::vector<double>& weights) {
        auto [cut, value] = multicut::planar_two_colorable_min(instance.graph, weights);
        return py::make_tuple(cut.cut_edges, cut.side_of, value);
      },
      py::arg("instance"), py::arg("weights"),
      "(cut indicator, side assignment, value) of the minimum-value two-colorable cut");

  m.def("multicut_cost", &multicut::multicut_cost, py::arg("theta"), py::arg("edge_cut"),
        "Sum of theta over cut edges");

  m.attr("__version__") = "0.1.0";
}
