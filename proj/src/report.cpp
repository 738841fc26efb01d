#include "topomap/report.hpp"

#include <cmath>

namespace topomap {

namespace {

// JSON has no infinities; invalid WOA candidates are written as null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json to_json(const Violation& v) {
  return {{"kind", std::string(to_string(v.kind))}, {"tasks", v.tasks}, {"units", v.units}};
}

Json to_json(const CostReport& r) {
  Json levels = Json::array();
  for (const auto& l : r.per_level)
    levels.push_back({{"level", l.level},
                      {"computation", l.computation},
                      {"communication", l.communication}});
  return {{"computation", r.computation},
          {"communication", r.communication},
          {"total", r.total},
          {"edges", r.edges},
          {"local_edges", r.local_edges},
          {"per_level", levels}};
}

Json to_json(const FidelityReport& r) {
  return {{"fidelity_mapping", r.fidelity_mapping},
          {"n_swaps", r.n_swaps},
          {"fidelity_swap", r.fidelity_swap},
          {"fidelity_movement", r.fidelity_movement},
          {"fidelity_total", r.fidelity_total},
          {"log_fidelity_mapping", r.log_fidelity_mapping},
          {"log_fidelity_total", r.log_fidelity_total}};
}

Json placement_json(const Assignment& a) {
  Json rows = Json::array();
  for (auto [task, unit] : a.placement) {
    Json row = {{"task", task}, {"unit", unit}};
    if (auto it = a.schedule.level_of.find(task); it != a.schedule.level_of.end())
      row["level"] = it->second;
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const SubTrace& t, bool timings) {
  Json j = {{"index", t.index},
            {"levels", {t.first_level, t.last_level}},
            {"vars", t.vars},
            {"couplers", t.couplers},
            {"incoming_cut", t.incoming_cut},
            {"outgoing_cut", t.outgoing_cut},
            {"energy", t.energy},
            {"engine", t.engine},
            {"samples", t.samples},
            {"truncated", t.truncated}};
  if (timings) {
    j["build_ms"] = t.build_ms;
    j["solve_ms"] = t.solve_ms;
  }
  return j;
}

Json to_json(const PipelineResult& r, bool timings) {
  Json subs = Json::array();
  std::size_t vars = 0, couplers = 0, max_vars = 0;
  double build = 0, solve = 0;
  for (const auto& t : r.trace) {
    subs.push_back(to_json(t, timings));
    vars += t.vars;
    couplers += t.couplers;
    max_vars = std::max(max_vars, t.vars);
    build += t.build_ms;
    solve += t.solve_ms;
  }
  Json violations = Json::array();
  for (const auto& v : r.assignment.violations) violations.push_back(to_json(v));
  Json j = {{"valid", r.assignment.valid()},
            {"levels", r.schedule.level_count()},
            {"level_capacity", r.schedule.capacity},
            {"sub_qubos", r.trace.size()},
            {"vars_total", vars},
            {"vars_max", max_vars},
            {"couplers_total", couplers},
            {"placement", placement_json(r.assignment)}};
  if (r.cost) j["cost"] = to_json(*r.cost);
  if (r.fidelity) j["fidelity"] = to_json(*r.fidelity);
  j["violations"] = violations;
  j["subs"] = subs;
  j["warnings"] = r.warnings;
  if (timings)
    j["timing_ms"] = {{"map", build}, {"solve", solve}, {"decode", r.decode_ms}};
  return j;
}

Json to_json(const WoaResult& r) {
  Json trace = Json::array();
  for (const auto& s : r.trace)
    trace.push_back({{"iteration", s.iteration},
                     {"pass", s.pass},
                     {"spread", s.spread},
                     {"pref_left", s.pref_left},
                     {"pref_right", s.pref_right},
                     {"metric_left", number(s.metric_left)},
                     {"metric_right", number(s.metric_right)},
                     {"pref_best", s.pref_best},
                     {"metric_best", number(s.metric_best)}});
  Json j = {{"pref_best", r.pref_best},
            {"metric_best", number(r.metric_best)},
            {"metric_initial", number(r.metric_initial)},
            {"iterations", r.trace.size()},
            {"evaluations", r.evaluations.size()}};
  if (r.best_report) {
    j["n_swaps"] = r.best_report->n_swaps;
    j["fidelity_total"] = r.best_report->fidelity_total;
    j["best"] = to_json(*r.best_report);
  }
  j["trace"] = trace;
  return j;
}

}  // namespace topomap
