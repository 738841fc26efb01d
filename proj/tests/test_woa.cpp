#include <doctest.h>

#include <cmath>
#include <limits>

#include "test_util.hpp"
#include "topomap/error.hpp"
#include "topomap/woa.hpp"

using namespace topomap;
using testutil::data;

namespace {

struct Fixture {
  TaskGraph graph;
  Architecture arch;
};

Fixture load(const char* circuit, const char* arch) {
  return {parse_circuit(data(circuit)), parse_arch(data(arch))};
}

void check_contract(const WoaResult& r) {
  double prev = r.metric_initial;
  for (const auto& s : r.trace) {
    CHECK(s.metric_best >= prev);
    prev = s.metric_best;
  }
  CHECK(r.metric_best >= r.metric_initial);
  bool seen = r.pref_best == r.evaluations.front().pref;
  for (const auto& e : r.evaluations) seen = seen || e.pref == r.pref_best;
  CHECK(seen);
}

}  // namespace

TEST_SUITE("woa") {

TEST_CASE("iteration counts") {
  auto f = load("circuits/chain3.qc", "vigo.arcq");
  auto exact = make_solver(Engine::exact);
  WoaConfig cfg;
  auto r = optimize_pref(f.graph, f.arch, cfg, exact);
  CHECK(r.trace.size() == 7);
  CHECK(r.evaluations.size() == 15);
  CHECK(r.evaluations.front().pref == 0.05);
  check_contract(r);

  // spread 2 * 0.9^k stays above 1 for k = 0..6
  int k = 0;
  for (double s = 2.0; s > 1.0; s *= 0.9) ++k;
  CHECK(k == 7);

  cfg.refine_pass = true;
  auto rr = optimize_pref(f.graph, f.arch, cfg, exact);
  int extra = 0;
  for (double s = std::sqrt(2.0); s > 1.0; s *= 0.9) ++extra;
  CHECK(extra == 4);
  CHECK(rr.trace.size() == 7 + 4);
  CHECK(rr.evaluations.size() == 15 + 8);
  CHECK(rr.trace.back().pass == 1);
  check_contract(rr);
}

TEST_CASE("matches a direct transcription of the search") {
  auto exact = make_solver(Engine::exact);
  for (auto [circuit, arch] : {std::pair{"circuits/hcx.qc", "qx2.arcq"},
                               std::pair{"circuits/fan3.qc", "vigo.arcq"},
                               std::pair{"circuits/chain3.qc", "line3.arcq"}}) {
    CAPTURE(circuit);
    auto f = load(circuit, arch);
    WoaConfig cfg;
    cfg.metric = WoaMetric::fidelity_total;
    auto sched = compute_levels(f.graph, f.arch);
    auto score = [&](double pref) {
      return evaluate_pref(f.graph, f.arch, sched, cfg, exact, pref).metric;
    };
    double pref_best = cfg.pref_initial, best = score(pref_best);
    for (double spread = cfg.s_spread; spread > 1; spread *= cfg.s_reduction) {
      double l = pref_best / spread, r = pref_best * spread;
      double ml = score(l), mr = score(r);
      double cand = ml >= mr ? l : r, mc = std::max(ml, mr);
      if (mc > best) best = mc, pref_best = cand;
    }
    auto res = optimize_pref(f.graph, f.arch, cfg, exact);
    CHECK(res.pref_best == pref_best);
    CHECK(res.metric_best == best);
    check_contract(res);
    // pure function of its inputs with an exact inner solver
    auto again = optimize_pref(f.graph, f.arch, cfg, exact);
    CHECK(again.pref_best == res.pref_best);
    CHECK(again.trace.size() == res.trace.size());
  }
}

TEST_CASE("flat objective keeps the initial preference") {
  auto f = load("circuits/single.qc", "vigo.arcq");
  auto r = optimize_pref(f.graph, f.arch, WoaConfig{}, make_solver(Engine::exact));
  CHECK(r.pref_best == 0.05);
  CHECK(r.metric_best == r.metric_initial);
  REQUIRE(r.best_report);
  CHECK(r.best_report->fidelity_total == doctest::Approx(0.9994).epsilon(1e-12));
}

TEST_CASE("other metrics") {
  auto f = load("circuits/fan3.qc", "qx2.arcq");
  auto exact = make_solver(Engine::exact);
  for (auto m : {WoaMetric::fidelity_mapping, WoaMetric::neg_n_swaps}) {
    WoaConfig cfg;
    cfg.metric = m;
    auto r = optimize_pref(f.graph, f.arch, cfg, exact);
    check_contract(r);
    REQUIRE(r.best_report);
    CHECK(r.metric_best == woa_metric(m, *r.best_report));
  }
  CHECK(parse_woa_metric("neg_n_swaps") == WoaMetric::neg_n_swaps);
  CHECK_THROWS_AS(parse_woa_metric("speed"), ConfigError);
}

TEST_CASE("invalid evaluations score -inf without aborting") {
  auto f = load("circuits/chain3.qc", "vigo.arcq");
  SolverFn zeros = [](const QuboProblem& q) {
    return Solution(q, BitVector(q.n_vars(), 0), "zeros");
  };
  auto r = optimize_pref(f.graph, f.arch, WoaConfig{}, zeros);
  CHECK(r.evaluations.size() == 15);
  for (const auto& e : r.evaluations) {
    CHECK_FALSE(e.valid);
    CHECK(e.metric == -std::numeric_limits<double>::infinity());
  }
  CHECK(r.pref_best == 0.05);
}

TEST_CASE("configuration checks") {
  auto f = load("circuits/chain3.qc", "vigo.arcq");
  auto exact = make_solver(Engine::exact);
  WoaConfig cfg;
  cfg.s_spread = 1.0;
  CHECK_THROWS_AS(optimize_pref(f.graph, f.arch, cfg, exact), ConfigError);
  cfg = {};
  cfg.s_reduction = 1.0;
  CHECK_THROWS_AS(optimize_pref(f.graph, f.arch, cfg, exact), ConfigError);
  cfg = {};
  cfg.pref_initial = 0;
  CHECK_THROWS_AS(optimize_pref(f.graph, f.arch, cfg, exact), ConfigError);
  auto g = parse_tcg(data("demo.tcg"));
  auto a = parse_arch(data("line2.arc"));
  CHECK_THROWS_AS(optimize_pref(g, a, WoaConfig{}, exact), ConfigError);
}

}  // TEST_SUITE
