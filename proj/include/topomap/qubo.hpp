#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "topomap/graph.hpp"

namespace topomap {

using BitVector = std::vector<std::uint8_t>;

/// Binary variable meaning "task runs on unit".
struct VarKey {
  int task = 0;
  int unit = 0;
  friend bool operator==(const VarKey&, const VarKey&) = default;
};

struct Coupler {
  std::size_t i = 0;  // i < j
  std::size_t j = 0;
  double value = 0.0;
  /// Set for one-unit-per-task, level-exclusivity and illegal gate-pair terms.
  bool constraint = false;
};

struct WeightConfig {
  double comp_scale = 1.0;
  double comm_scale = 1.0;
  /// Weight of the mapping-fidelity term in quantum problems.
  double pref = 1.0;
  double big_offset_slack = 1.0;

  void validate() const;
};

/// Sparse QUBO: E(q) = sum_i h_i q_i + sum_{i<j} J_ij q_i q_j.
///
/// Every linear weight is shifted down by a constant K per task so that any
/// solution placing each task exactly once has energy `cost - offset`, i.e.
/// `energy + offset` is the (scaled) placement cost. Constraint couplers all
/// carry `penalty`, which exceeds the total magnitude of every other weight.
struct QuboProblem {
  Flavor flavor = Flavor::classical;
  std::vector<double> linear;
  /// Sorted by (i, j), no duplicates, no zero values.
  std::vector<Coupler> couplers;
  std::vector<VarKey> var_map;
  /// Number of units each task ranges over; var index = task_pos * units + unit.
  std::size_t units = 0;
  double penalty = 0.0;
  double offset = 0.0;
  double pref = 1.0;
  /// Product of hardware normalisation factors applied so far.
  double scale = 1.0;

  std::size_t n_vars() const noexcept { return linear.size(); }
  std::size_t task_count() const noexcept {
    return units ? var_map.size() / units : 0;
  }
  /// Tasks in variable order.
  std::vector<int> tasks() const;
  std::optional<std::size_t> var_index(int task, int unit) const;
};

/// Precomputed linear contribution of already-placed neighbours of `task`,
/// indexed by unit.
struct LinearBias {
  int task = 0;
  std::vector<double> per_unit;
};

/// Builds the QUBO for the tasks of levels [first_level, last_level] of the
/// schedule, adding `biases` to the per-unit linear costs before the offset
/// is applied. Edges with an endpoint outside the level range are ignored.
QuboProblem build_level_range_qubo(const TaskGraph& graph, const Architecture& arch,
                                   const LevelSchedule& schedule,
                                   const WeightConfig& cfg, std::size_t first_level,
                                   std::size_t last_level,
                                   std::span<const LinearBias> biases = {});

QuboProblem build_classical_qubo(const TaskGraph& graph, const Architecture& arch,
                                 const LevelSchedule& schedule,
                                 const WeightConfig& cfg);

QuboProblem build_quantum_qubo(const TaskGraph& graph, const Architecture& arch,
                               const LevelSchedule& schedule,
                               const WeightConfig& cfg);

/// Cost contribution of edge `e` when its source sits on `src_unit` and its
/// destination on `dst_unit`, as used in the QUBO (before the offset).
double edge_weight(const Edge& e, const Architecture& arch, const WeightConfig& cfg,
                   int src_unit, int dst_unit);

double energy(const QuboProblem& q, std::span<const std::uint8_t> bits);

/// Uniform positive rescale into the annealer ranges |h| <= 2, |J| <= 1.
QuboProblem normalize_for_hardware(const QuboProblem& q);

/// qbsolv `.qubo` text; `c` lines carry the variable map and metadata.
std::string export_qubo(const QuboProblem& q);
/// Reads `.qubo` text. Variable map and metadata are restored when present.
QuboProblem parse_qubo(std::string_view text);

/// qmasm text with variables named `x_<task>_<unit>`.
std::string export_qmasm(const QuboProblem& q);

}  // namespace topomap
