#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "topomap/graph.hpp"
#include "topomap/interpret.hpp"
#include "topomap/qubo.hpp"
#include "topomap/solve.hpp"

namespace topomap {

enum class WoaMetric { fidelity_total, fidelity_mapping, neg_n_swaps };

std::string_view to_string(WoaMetric m);
WoaMetric parse_woa_metric(std::string_view name);

struct WoaConfig {
  double s_spread = 2.0;
  double s_reduction = 0.9;
  double pref_initial = 0.05;
  WoaMetric metric = WoaMetric::fidelity_total;
  /// Run the search a second time with spread sqrt(s_spread).
  bool refine_pass = false;
  /// comp/comm scales and slack; pref is overridden per evaluation.
  WeightConfig weights;
  /// Sub-QUBO granularity for each evaluation, 0 = unpartitioned.
  std::size_t granularity = 0;

  void validate() const;
};

struct WoaEvaluation {
  double pref = 0.0;
  double metric = 0.0;
  bool valid = false;
  std::optional<FidelityReport> report;
};

struct WoaStep {
  std::size_t iteration = 0;
  std::size_t pass = 0;
  double spread = 0.0;
  double pref_left = 0.0;
  double pref_right = 0.0;
  double metric_left = 0.0;
  double metric_right = 0.0;
  double pref_best = 0.0;
  double metric_best = 0.0;
};

struct WoaResult {
  double pref_best = 0.0;
  double metric_best = 0.0;
  double metric_initial = 0.0;
  std::optional<FidelityReport> best_report;
  std::vector<WoaStep> trace;
  std::vector<WoaEvaluation> evaluations;
};

double woa_metric(WoaMetric m, const FidelityReport& r);

/// One map-solve-score run at `pref`. Invalid placements score -inf.
WoaEvaluation evaluate_pref(const TaskGraph& graph, const Architecture& arch,
                            const LevelSchedule& schedule, const WoaConfig& cfg,
                            const SolverFn& solver, double pref);

/// Multiplicative line search over pref: try pref_best / spread and
/// pref_best * spread, keep a strict improvement, shrink spread by
/// s_reduction until it reaches 1.
WoaResult optimize_pref(const TaskGraph& graph, const Architecture& arch,
                        const WoaConfig& cfg, const SolverFn& solver);

}  // namespace topomap
