#include "topomap/partition.hpp"

#include <chrono>

#include "topomap/error.hpp"

namespace topomap {

namespace {

double ms_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t)
      .count();
}

}  // namespace

std::vector<SubProblem> partition_levels(const TaskGraph& graph,
                                         const LevelSchedule& schedule,
                                         std::size_t granularity) {
  const std::size_t levels = schedule.level_count();
  if (granularity == 0 || granularity > levels) granularity = std::max<std::size_t>(levels, 1);
  std::vector<SubProblem> subs;
  for (std::size_t first = 0; first < levels; first += granularity) {
    SubProblem s;
    s.first_level = first;
    s.last_level = std::min(first + granularity, levels) - 1;
    for (auto L = s.first_level; L <= s.last_level; ++L)
      s.tasks.insert(s.tasks.end(), schedule.levels[L].begin(), schedule.levels[L].end());
    subs.push_back(std::move(s));
  }
  auto group_of = [&](int task) { return schedule.level_of.at(task) / granularity; };
  for (const auto& e : graph.edges()) {
    auto gs = group_of(e.src), gd = group_of(e.dst);
    if (gs == gd) continue;
    // Levels follow edges, so a cut edge always points to a later group.
    subs[gs].outgoing.push_back({e.id, e.src, e.dst});
    subs[gd].incoming.push_back({e.id, e.src, e.dst});
  }
  return subs;
}

std::vector<LinearBias> fold_cut_edges(const SubProblem& sub,
                                       const std::map<int, int>& placements,
                                       const TaskGraph& graph, const Architecture& arch,
                                       const WeightConfig& cfg) {
  const std::size_t U = arch.unit_count();
  std::map<int, std::vector<double>> acc;
  for (const auto& cut : sub.incoming) {
    auto placed = placements.find(cut.src);
    if (placed == placements.end())
      throw PipelineOrderError("task " + std::to_string(cut.src) +
                               " feeds the sub-problem but has not been placed yet");
    const Edge* edge = nullptr;
    for (auto idx : graph.in_edges(graph.index_of(cut.dst)))
      if (graph.edges()[idx].id == cut.edge) edge = &graph.edges()[idx];
    if (!edge) throw ReferenceError("unknown cut edge " + std::to_string(cut.edge));
    auto& row = acc[cut.dst];
    row.resize(U, 0.0);
    for (std::size_t p = 0; p < U; ++p)
      row[p] += edge_weight(*edge, arch, cfg, placed->second, static_cast<int>(p));
  }
  std::vector<LinearBias> out;
  for (auto& [task, row] : acc) out.push_back({task, std::move(row)});
  return out;
}

QuboProblem build_subqubo(const SubProblem& sub, const std::map<int, int>& placements,
                          const TaskGraph& graph, const Architecture& arch,
                          const LevelSchedule& schedule, const WeightConfig& cfg) {
  auto biases = fold_cut_edges(sub, placements, graph, arch, cfg);
  return build_level_range_qubo(graph, arch, schedule, cfg, sub.first_level, sub.last_level,
                                biases);
}

PipelineResult run_pipeline(const TaskGraph& graph, const Architecture& arch,
                            const LevelSchedule& schedule, const WeightConfig& cfg,
                            const SolverFn& solver, std::size_t granularity) {
  PipelineResult r;
  r.schedule = schedule;
  std::map<int, int> placements;
  auto subs = partition_levels(graph, schedule, granularity);
  for (std::size_t k = 0; k < subs.size(); ++k) {
    const auto& sub = subs[k];
    SubTrace t;
    t.index = k;
    t.first_level = sub.first_level;
    t.last_level = sub.last_level;
    t.incoming_cut = sub.incoming.size();
    t.outgoing_cut = sub.outgoing.size();

    auto t0 = std::chrono::steady_clock::now();
    QuboProblem q = build_subqubo(sub, placements, graph, arch, schedule, cfg);
    t.build_ms = ms_since(t0);
    t.vars = q.n_vars();
    t.couplers = q.couplers.size();

    t0 = std::chrono::steady_clock::now();
    Solution s = solver(q);
    t.solve_ms = ms_since(t0);
    t.energy = s.energy();
    t.engine = s.engine();
    t.samples = s.samples_evaluated;
    t.truncated = s.truncated;
    for (const auto& w : s.warnings) r.warnings.push_back("sub " + std::to_string(k) + ": " + w);

    t0 = std::chrono::steady_clock::now();
    Assignment part = decode(q, s.bits(), graph, arch, schedule);
    if (!part.valid()) {
      std::string what = std::to_string(part.violations.size()) + " violation(s), first " +
                         std::string(to_string(part.violations.front().kind));
      throw SolveQualityError(k, what);
    }
    placements.insert(part.placement.begin(), part.placement.end());
    r.decode_ms += ms_since(t0);
    r.bits.push_back(s.bits());
    r.trace.push_back(std::move(t));
  }

  auto t0 = std::chrono::steady_clock::now();
  r.assignment = make_assignment(std::move(placements), graph, arch, schedule);
  if (r.assignment.valid()) {
    if (graph.flavor() == Flavor::classical)
      r.cost = mtom_classical(r.assignment, graph, arch);
    else
      r.fidelity = mtom_quantum(r.assignment, graph, arch);
  }
  r.decode_ms += ms_since(t0);
  return r;
}

PipelineResult run_pipeline(const TaskGraph& graph, const Architecture& arch,
                            const WeightConfig& cfg, const SolverFn& solver,
                            std::size_t granularity) {
  return run_pipeline(graph, arch, compute_levels(graph, arch), cfg, solver, granularity);
}

}  // namespace topomap
