#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "topomap/graph.hpp"
#include "topomap/qubo.hpp"

namespace topomap {

enum class ViolationKind { multi_unit, unassigned, level_collision, illegal_gate_pair };

std::string_view to_string(ViolationKind k);

struct Violation {
  ViolationKind kind = ViolationKind::unassigned;
  std::vector<int> tasks;
  /// Unit(s) involved, when meaningful.
  std::vector<int> units;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Decoded task -> unit placement. Invalid placements are described, never
/// thrown: `violations` is empty exactly when every task sits on one unit,
/// no two same-level tasks share a unit and every gate pair is on a legal
/// directed coupling.
struct Assignment {
  std::map<int, int> placement;
  LevelSchedule schedule;
  std::vector<Violation> violations;

  bool valid() const noexcept { return violations.empty(); }
};

struct LevelCost {
  std::size_t level = 0;
  double computation = 0.0;
  /// Cost of edges whose destination is in this level.
  double communication = 0.0;
};

/// Sum of placement costs. This is not a makespan: tasks of one level run
/// in parallel but their costs are added.
struct CostReport {
  double computation = 0.0;
  double communication = 0.0;
  double total = 0.0;
  std::vector<LevelCost> per_level;
  std::size_t local_edges = 0;
  std::size_t edges = 0;
};

struct FidelityReport {
  double fidelity_mapping = 1.0;
  long n_swaps = 0;
  double fidelity_swap = 1.0;
  double fidelity_movement = 1.0;
  double fidelity_total = 1.0;
  /// Natural logs, kept for precision on long circuits.
  double log_fidelity_mapping = 0.0;
  double log_fidelity_total = 0.0;
};

/// Reads placements for the tasks covered by `q` out of `bits`.
Assignment decode(const QuboProblem& q, std::span<const std::uint8_t> bits,
                  const TaskGraph& graph, const Architecture& arch,
                  const LevelSchedule& schedule);

/// Builds an assignment from a placement map and checks it against every
/// task of `graph`.
Assignment make_assignment(std::map<int, int> placement, const TaskGraph& graph,
                           const Architecture& arch, const LevelSchedule& schedule);

/// Inverse of decode for the tasks covered by `q`.
BitVector encode(const QuboProblem& q, const std::map<int, int>& placement);

const std::vector<Violation>& validate(const Assignment& a);

CostReport mtom_classical(const Assignment& a, const TaskGraph& graph,
                          const Architecture& arch);

FidelityReport mtom_quantum(const Assignment& a, const TaskGraph& graph,
                            const Architecture& arch);

}  // namespace topomap
