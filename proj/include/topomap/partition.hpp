#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "topomap/graph.hpp"
#include "topomap/interpret.hpp"
#include "topomap/qubo.hpp"
#include "topomap/solve.hpp"

namespace topomap {

struct CutEdge {
  int edge = 0;
  int src = 0;
  int dst = 0;
};

/// A group of consecutive dependency levels solved as one sub-QUBO.
struct SubProblem {
  std::size_t first_level = 0;
  std::size_t last_level = 0;
  std::vector<int> tasks;
  /// Edges entering from an earlier group; their sources are already placed
  /// when this group is built.
  std::vector<CutEdge> incoming;
  /// Edges leaving for a later group. Not part of the objective.
  std::vector<CutEdge> outgoing;
};

std::vector<SubProblem> partition_levels(const TaskGraph& graph,
                                         const LevelSchedule& schedule,
                                         std::size_t granularity);

/// Per-unit linear costs contributed by incoming cut edges, one entry per
/// destination task (sources on the same task are summed).
std::vector<LinearBias> fold_cut_edges(const SubProblem& sub,
                                       const std::map<int, int>& placements,
                                       const TaskGraph& graph, const Architecture& arch,
                                       const WeightConfig& cfg);

QuboProblem build_subqubo(const SubProblem& sub, const std::map<int, int>& placements,
                          const TaskGraph& graph, const Architecture& arch,
                          const LevelSchedule& schedule, const WeightConfig& cfg);

struct SubTrace {
  std::size_t index = 0;
  std::size_t first_level = 0;
  std::size_t last_level = 0;
  std::size_t vars = 0;
  std::size_t couplers = 0;
  std::size_t incoming_cut = 0;
  std::size_t outgoing_cut = 0;
  double energy = 0.0;
  std::string engine;
  std::uint64_t samples = 0;
  bool truncated = false;
  double build_ms = 0.0;
  double solve_ms = 0.0;
};

struct PipelineResult {
  LevelSchedule schedule;
  Assignment assignment;
  std::vector<SubTrace> trace;
  /// Solver output per sub-QUBO, in order.
  std::vector<BitVector> bits;
  std::optional<CostReport> cost;
  std::optional<FidelityReport> fidelity;
  std::vector<std::string> warnings;
  double decode_ms = 0.0;
};

/// Solves the groups one after another, threading placements forward.
/// `granularity` = 0 means a single group.
PipelineResult run_pipeline(const TaskGraph& graph, const Architecture& arch,
                            const LevelSchedule& schedule, const WeightConfig& cfg,
                            const SolverFn& solver, std::size_t granularity);

PipelineResult run_pipeline(const TaskGraph& graph, const Architecture& arch,
                            const WeightConfig& cfg, const SolverFn& solver,
                            std::size_t granularity);

}  // namespace topomap
