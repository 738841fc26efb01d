#include "topomap/woa.hpp"

#include <cmath>
#include <limits>

#include "topomap/error.hpp"
#include "topomap/partition.hpp"

namespace topomap {

std::string_view to_string(WoaMetric m) {
  switch (m) {
    case WoaMetric::fidelity_total: return "fidelity_total";
    case WoaMetric::fidelity_mapping: return "fidelity_mapping";
    case WoaMetric::neg_n_swaps: return "neg_n_swaps";
  }
  return "?";
}

WoaMetric parse_woa_metric(std::string_view name) {
  if (name == "fidelity_total") return WoaMetric::fidelity_total;
  if (name == "fidelity_mapping") return WoaMetric::fidelity_mapping;
  if (name == "neg_n_swaps") return WoaMetric::neg_n_swaps;
  throw ConfigError("unknown metric '" + std::string(name) + "'");
}

void WoaConfig::validate() const {
  if (!(s_spread > 1.0)) throw ConfigError("search spread must exceed 1");
  if (!(s_reduction > 0.0 && s_reduction < 1.0))
    throw ConfigError("spread reduction must lie in (0, 1)");
  if (!(pref_initial > 0.0) || !std::isfinite(pref_initial))
    throw ConfigError("initial pref must be positive");
  weights.validate();
}

double woa_metric(WoaMetric m, const FidelityReport& r) {
  switch (m) {
    case WoaMetric::fidelity_total: return r.fidelity_total;
    case WoaMetric::fidelity_mapping: return r.fidelity_mapping;
    case WoaMetric::neg_n_swaps: return -static_cast<double>(r.n_swaps);
  }
  return 0.0;
}

WoaEvaluation evaluate_pref(const TaskGraph& graph, const Architecture& arch,
                            const LevelSchedule& schedule, const WoaConfig& cfg,
                            const SolverFn& solver, double pref) {
  WoaEvaluation ev;
  ev.pref = pref;
  ev.metric = -std::numeric_limits<double>::infinity();
  WeightConfig w = cfg.weights;
  w.pref = pref;
  try {
    auto run = run_pipeline(graph, arch, schedule, w, solver, cfg.granularity);
    if (run.fidelity) {
      ev.valid = true;
      ev.metric = woa_metric(cfg.metric, *run.fidelity);
      ev.report = run.fidelity;
    }
  } catch (const SolveQualityError&) {
  } catch (const InvalidAssignmentError&) {
  }
  return ev;
}

WoaResult optimize_pref(const TaskGraph& graph, const Architecture& arch,
                        const WoaConfig& cfg, const SolverFn& solver) {
  cfg.validate();
  if (graph.flavor() != Flavor::quantum || arch.kind() != ArchKind::quantum)
    throw ConfigError("weight optimisation needs a circuit and a qubit architecture");
  const LevelSchedule schedule = compute_levels(graph, arch);

  WoaResult r;
  auto evaluate = [&](double pref) {
    r.evaluations.push_back(evaluate_pref(graph, arch, schedule, cfg, solver, pref));
    return r.evaluations.back();
  };

  auto first = evaluate(cfg.pref_initial);
  r.pref_best = cfg.pref_initial;
  r.metric_best = r.metric_initial = first.metric;
  r.best_report = first.report;

  auto search = [&](double spread, std::size_t pass) {
    for (std::size_t it = 0; spread > 1.0; ++it, spread *= cfg.s_reduction) {
      WoaStep step;
      step.iteration = it;
      step.pass = pass;
      step.spread = spread;
      step.pref_left = r.pref_best / spread;
      step.pref_right = r.pref_best * spread;
      auto left = evaluate(step.pref_left);
      auto right = evaluate(step.pref_right);
      step.metric_left = left.metric;
      step.metric_right = right.metric;
      // Strict improvement only; on a left/right tie the smaller pref wins.
      const WoaEvaluation* pick = nullptr;
      if (left.metric > r.metric_best) pick = &left;
      if (right.metric > r.metric_best && (!pick || right.metric > left.metric)) pick = &right;
      if (pick) {
        r.pref_best = pick->pref;
        r.metric_best = pick->metric;
        r.best_report = pick->report;
      }
      step.pref_best = r.pref_best;
      step.metric_best = r.metric_best;
      r.trace.push_back(step);
    }
  };
  search(cfg.s_spread, 0);
  if (cfg.refine_pass) search(std::sqrt(cfg.s_spread), 1);
  return r;
}

}  // namespace topomap
