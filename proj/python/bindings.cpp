#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "topomap/error.hpp"
#include "topomap/interpret.hpp"
#include "topomap/partition.hpp"
#include "topomap/qubo.hpp"
#include "topomap/report.hpp"
#include "topomap/solve.hpp"
#include "topomap/woa.hpp"

namespace py = pybind11;
using namespace topomap;

namespace {

SolverFn solver_from(const std::string& name, std::uint64_t seed, long time_budget_ms,
                     std::size_t restarts) {
  SolverParams p;
  p.seed = seed;
  if (time_budget_ms >= 0) p.time_budget = std::chrono::milliseconds(time_budget_ms);
  p.restarts = restarts;
  return make_solver(parse_engine(name), p);
}

// Reports cross the boundary as JSON text and are decoded on the Python side.
std::string dump(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Topology-aware task placement as QUBO";

  auto base = py::register_exception<Error>(m, "TopomapError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ReferenceError>(m, "ReferenceError", base.ptr());
  py::register_exception<CycleError>(m, "CycleError", base.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<SizeError>(m, "SizeError", base.ptr());
  py::register_exception<SolveQualityError>(m, "SolveQualityError", base.ptr());
  py::register_exception<InvalidAssignmentError>(m, "InvalidAssignmentError", base.ptr());

  py::class_<TaskGraph>(m, "TaskGraph")
      .def_property_readonly("flavor", [](const TaskGraph& g) { return std::string(to_string(g.flavor())); })
      .def_property_readonly("n_tasks", &TaskGraph::size)
      .def_property_readonly("n_edges", [](const TaskGraph& g) { return g.edges().size(); })
      .def_property_readonly("task_ids", [](const TaskGraph& g) {
        std::vector<int> ids;
        for (const auto& t : g.tasks()) ids.push_back(t.id);
        return ids;
      })
      .def("to_tcg", &serialize_tcg)
      .def("__repr__", [](const TaskGraph& g) {
        return "<TaskGraph " + std::string(to_string(g.flavor())) + " tasks=" +
               std::to_string(g.size()) + " edges=" + std::to_string(g.edges().size()) + ">";
      });

  py::class_<Architecture>(m, "Architecture")
      .def_property_readonly("kind", [](const Architecture& a) {
        return a.kind() == ArchKind::classical ? "classical" : "quantum";
      })
      .def_property_readonly("n_units", &Architecture::unit_count)
      .def_property_readonly("diameter", &Architecture::diameter)
      .def("hop_count", &Architecture::hop_count)
      .def("hop_cost", [](const Architecture& a, int p1, int p2) { return hop_cost(a, p1, p2); })
      .def("to_text", &serialize_arch);

  py::class_<LevelSchedule>(m, "LevelSchedule")
      .def_readonly("levels", &LevelSchedule::levels)
      .def_readonly("capacity", &LevelSchedule::capacity)
      .def_property_readonly("n_levels", &LevelSchedule::level_count);

  py::class_<WeightConfig>(m, "WeightConfig")
      .def(py::init([](double comp_scale, double comm_scale, double pref, double slack) {
             WeightConfig w{comp_scale, comm_scale, pref, slack};
             w.validate();
             return w;
           }),
           py::arg("comp_scale") = 1.0, py::arg("comm_scale") = 1.0, py::arg("pref") = 1.0,
           py::arg("big_offset_slack") = 1.0)
      .def_readwrite("comp_scale", &WeightConfig::comp_scale)
      .def_readwrite("comm_scale", &WeightConfig::comm_scale)
      .def_readwrite("pref", &WeightConfig::pref)
      .def_readwrite("big_offset_slack", &WeightConfig::big_offset_slack);

  py::class_<QuboProblem>(m, "QuboProblem")
      .def_property_readonly("n_vars", &QuboProblem::n_vars)
      .def_readonly("linear", &QuboProblem::linear)
      .def_readonly("offset", &QuboProblem::offset)
      .def_readonly("penalty", &QuboProblem::penalty)
      .def_readonly("scale", &QuboProblem::scale)
      .def_property_readonly("couplers", [](const QuboProblem& q) {
        std::vector<std::tuple<std::size_t, std::size_t, double>> out;
        for (const auto& c : q.couplers) out.emplace_back(c.i, c.j, c.value);
        return out;
      })
      .def_property_readonly("var_map", [](const QuboProblem& q) {
        std::vector<std::pair<int, int>> out;
        for (const auto& v : q.var_map) out.emplace_back(v.task, v.unit);
        return out;
      })
      .def("energy", [](const QuboProblem& q, const BitVector& bits) { return energy(q, bits); });

  py::class_<Solution>(m, "Solution")
      .def_property_readonly("bits", &Solution::bits)
      .def_property_readonly("energy", &Solution::energy)
      .def_property_readonly("engine", &Solution::engine)
      .def_property_readonly("seed", &Solution::seed)
      .def_readonly("truncated", &Solution::truncated)
      .def_readonly("warnings", &Solution::warnings);

  py::class_<Assignment>(m, "Assignment")
      .def_readonly("placement", &Assignment::placement)
      .def_property_readonly("valid", &Assignment::valid)
      .def_property_readonly("violations", [](const Assignment& a) {
        std::vector<std::string> out;
        for (const auto& v : a.violations) out.push_back(to_json(v).dump());
        return out;
      });

  m.def("parse_tcg", [](const std::string& s) { return parse_tcg(s); }, py::arg("text"));
  m.def("parse_circuit", [](const std::string& s) { return parse_circuit(s); }, py::arg("text"));
  m.def("parse_arch", [](const std::string& s) { return parse_arch(s); }, py::arg("text"));
  m.def("compute_levels",
        py::overload_cast<const TaskGraph&, const Architecture&>(&compute_levels),
        py::arg("graph"), py::arg("arch"));

  m.def("build_qubo",
        [](const TaskGraph& g, const Architecture& a, const LevelSchedule& s,
           const WeightConfig& w) {
          return g.flavor() == Flavor::quantum ? build_quantum_qubo(g, a, s, w)
                                               : build_classical_qubo(g, a, s, w);
        },
        py::arg("graph"), py::arg("arch"), py::arg("schedule"), py::arg("weights") = WeightConfig{});
  m.def("normalize_for_hardware", &normalize_for_hardware);
  m.def("export_qubo", &export_qubo);
  m.def("export_qmasm", &export_qmasm);
  m.def("parse_qubo", [](const std::string& s) { return parse_qubo(s); });

  m.def("solve",
        [](const QuboProblem& q, const std::string& solver, std::uint64_t seed,
           long time_budget_ms, std::size_t restarts) {
          auto fn = solver_from(solver, seed, time_budget_ms, restarts);
          py::gil_scoped_release release;
          return fn(q);
        },
        py::arg("qubo"), py::arg("solver") = "tabu", py::arg("seed") = 0,
        py::arg("time_budget_ms") = -1, py::arg("restarts") = 4);
  m.def("import_solution", [](const std::string& s, const QuboProblem& q) {
    return import_solution(s, q);
  });
  m.def("export_solution", &export_solution);

  m.def("decode",
        [](const QuboProblem& q, const BitVector& bits, const TaskGraph& g,
           const Architecture& a, const LevelSchedule& s) { return decode(q, bits, g, a, s); },
        py::arg("qubo"), py::arg("bits"), py::arg("graph"), py::arg("arch"), py::arg("schedule"));
  m.def("make_assignment", &make_assignment, py::arg("placement"), py::arg("graph"),
        py::arg("arch"), py::arg("schedule"));
  m.def("mtom_classical_json", [](const Assignment& a, const TaskGraph& g, const Architecture& arch) {
    return dump(to_json(mtom_classical(a, g, arch)));
  });
  m.def("mtom_quantum_json", [](const Assignment& a, const TaskGraph& g, const Architecture& arch) {
    return dump(to_json(mtom_quantum(a, g, arch)));
  });

  m.def("run_json",
        [](const TaskGraph& g, const Architecture& a, const WeightConfig& w,
           const std::string& solver, std::uint64_t seed, std::size_t granularity,
           long time_budget_ms, bool timings) {
          auto fn = solver_from(solver, seed, time_budget_ms, 4);
          PipelineResult r;
          {
            py::gil_scoped_release release;
            r = run_pipeline(g, a, w, fn, granularity);
          }
          return dump(to_json(r, timings));
        },
        py::arg("graph"), py::arg("arch"), py::arg("weights") = WeightConfig{},
        py::arg("solver") = "tabu", py::arg("seed") = 0, py::arg("granularity") = 0,
        py::arg("time_budget_ms") = -1, py::arg("timings") = true);

  m.def("optimize_pref_json",
        [](const TaskGraph& g, const Architecture& a, const std::string& solver,
           std::uint64_t seed, double s_spread, double s_reduction, double pref_initial,
           const std::string& metric, bool refine, std::size_t granularity) {
          WoaConfig cfg;
          cfg.s_spread = s_spread;
          cfg.s_reduction = s_reduction;
          cfg.pref_initial = pref_initial;
          cfg.metric = parse_woa_metric(metric);
          cfg.refine_pass = refine;
          cfg.granularity = granularity;
          auto fn = solver_from(solver, seed, -1, 4);
          WoaResult r;
          {
            py::gil_scoped_release release;
            r = optimize_pref(g, a, cfg, fn);
          }
          return dump(to_json(r));
        },
        py::arg("graph"), py::arg("arch"), py::arg("solver") = "exact", py::arg("seed") = 0,
        py::arg("s_spread") = 2.0, py::arg("s_reduction") = 0.9, py::arg("pref_initial") = 0.05,
        py::arg("metric") = "fidelity_total", py::arg("refine") = false,
        py::arg("granularity") = 0);
}
