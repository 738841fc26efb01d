#include <doctest.h>

#include <random>

#include "fold_check.hpp"
#include "oracle.hpp"
#include "test_util.hpp"
#include "topomap/error.hpp"
#include "topomap/partition.hpp"

using namespace topomap;
using testutil::data;

namespace {

// Five-level chain on a 2-unit line.
TaskGraph chain5() {
  return parse_tcg("t 0 1\nt 1 2\nt 2 3\nt 3 4\nt 4 5\n"
                   "e 0 0 1 1\ne 1 1 2 2\ne 2 2 3 1\ne 3 3 4 2\ne 4 0 4 1\n");
}

}  // namespace

TEST_SUITE("partition") {

TEST_CASE("level grouping") {
  auto g = chain5();
  auto a = parse_arch(data("line2.arc"));
  auto s = compute_levels(g, a);
  REQUIRE(s.level_count() == 5);

  auto subs = partition_levels(g, s, 2);
  REQUIRE(subs.size() == 3);
  CHECK(subs[0].first_level == 0);
  CHECK(subs[0].last_level == 1);
  CHECK(subs[1].first_level == 2);
  CHECK(subs[1].last_level == 3);
  CHECK(subs[2].first_level == 4);
  CHECK(subs[2].last_level == 4);
  CHECK(subs[0].tasks == std::vector<int>{0, 1});
  // 1 -> 2 and 3 -> 4 cross a boundary, so does the long edge 0 -> 4
  CHECK(subs[0].outgoing.size() == 2);
  CHECK(subs[1].incoming.size() == 1);
  CHECK(subs[2].incoming.size() == 2);
  CHECK(subs[0].incoming.empty());

  for (std::size_t gran : {std::size_t{0}, std::size_t{5}, std::size_t{9}}) {
    auto one = partition_levels(g, s, gran);
    REQUIRE(one.size() == 1);
    CHECK(one[0].tasks.size() == 5);
    CHECK(one[0].incoming.empty());
  }
  CHECK(partition_levels(g, s, 1).size() == 5);
}

TEST_CASE("cut edge folding") {
  auto g = parse_tcg("t 0 1\nt 1 1\ne 0 0 1 2\n");
  auto a = parse_arch(data("line2.arc"));
  auto s = compute_levels(g, a);
  auto subs = partition_levels(g, s, 1);
  REQUIRE(subs.size() == 2);
  auto biases = fold_cut_edges(subs[1], {{0, 0}}, g, a, {});
  REQUIRE(biases.size() == 1);
  CHECK(biases[0].task == 1);
  CHECK(biases[0].per_unit == std::vector<double>{0.0, 4.0});

  CHECK_THROWS_AS(fold_cut_edges(subs[1], {}, g, a, {}), PipelineOrderError);
  CHECK_THROWS_AS(build_subqubo(subs[1], {}, g, a, s, {}), PipelineOrderError);

  SUBCASE("two sources into one task are summed") {
    auto g2 = parse_tcg("t 0 1\nt 1 1\nt 2 1\ne 0 0 2 1\ne 1 1 2 3\n");
    auto s2 = compute_levels(g2, a);
    auto sub = partition_levels(g2, s2, 1)[1];
    auto b = fold_cut_edges(sub, {{0, 0}, {1, 1}}, g2, a, {});
    REQUIRE(b.size() == 1);
    CHECK(b[0].per_unit == std::vector<double>{6.0, 2.0});
  }
}

TEST_CASE("folded sub-problem equals the clamped explicit problem") {
  std::mt19937_64 rng(77);
  int ran = 0;
  for (int i = 0; i < 300; ++i) {
    auto c = oracle::random_classical(rng, 16, true);
    auto o = foldcheck::check(rng, c.graph, c.arch, c.cfg, 1 + rng() % 2);
    if (!o.ran) continue;
    ++ran;
    CHECK(o.mismatches == 0);
  }
  CHECK(ran >= 50);
}

TEST_CASE("pipeline") {
  std::mt19937_64 rng(19);
  auto exact = make_solver(Engine::exact);

  SUBCASE("one group reproduces the unpartitioned solve") {
    SolverParams sp;
    sp.seed = 9;
    auto tabu = make_solver(Engine::tabu, sp);
    for (int i = 0; i < 60; ++i) {
      auto c = oracle::random_classical(rng);
      auto s = compute_levels(c.graph, c.arch);
      auto q = build_classical_qubo(c.graph, c.arch, s, c.cfg);
      for (const auto* fn : {&exact, &tabu}) {
        auto r = run_pipeline(c.graph, c.arch, s, c.cfg, *fn, s.level_count());
        REQUIRE(r.bits.size() == 1);
        CHECK(r.bits[0] == (*fn)(q).bits());
        CHECK(r.trace.size() == 1);
      }
    }
  }
  SUBCASE("greedy groups never beat the global optimum") {
    for (int i = 0; i < 100; ++i) {
      auto c = oracle::random_classical(rng, 16, true);
      double best = oracle::brute_force_min(c);
      auto r = run_pipeline(c.graph, c.arch, c.cfg, exact, 1);
      REQUIRE(r.assignment.valid());
      REQUIRE(r.cost);
      double total = c.cfg.comp_scale * r.cost->computation + c.cfg.comm_scale * r.cost->communication;
      CHECK(total >= best - 1e-9);
      // the placement is complete and consistent with the oracle
      auto ref = oracle::classical_cost(c.graph, c.arch, r.assignment.placement);
      CHECK(r.cost->computation == doctest::Approx(ref.computation).epsilon(1e-12));
      CHECK(r.cost->communication == doctest::Approx(ref.communication).epsilon(1e-12));
    }
  }
  SUBCASE("trace bookkeeping") {
    auto g = chain5();
    auto a = parse_arch(data("line2.arc"));
    auto r = run_pipeline(g, a, WeightConfig{}, exact, 2);
    REQUIRE(r.trace.size() == 3);
    CHECK(r.trace[0].vars == 4);
    CHECK(r.trace[2].vars == 2);
    CHECK(r.trace[2].incoming_cut == 2);
    CHECK(r.trace[0].outgoing_cut == 2);
    CHECK(r.assignment.valid());
    CHECK(r.assignment.placement.size() == 5);
  }
  SUBCASE("quantum circuits through groups") {
    auto g = parse_circuit(data("circuits/chain3.qc"));
    auto a = parse_arch(data("vigo.arcq"));
    WeightConfig w;
    w.pref = 0.05;
    auto r = run_pipeline(g, a, w, exact, 1);
    CHECK(r.assignment.valid());
    REQUIRE(r.fidelity);
    CHECK(r.fidelity->fidelity_total <= r.fidelity->fidelity_mapping);
  }
  SUBCASE("invalid sub-solution aborts with its index") {
    auto g = chain5();
    auto a = parse_arch(data("line2.arc"));
    SolverFn zeros = [](const QuboProblem& q) {
      return Solution(q, BitVector(q.n_vars(), 0), "zeros");
    };
    try {
      run_pipeline(g, a, WeightConfig{}, zeros, 2);
      FAIL("expected SolveQualityError");
    } catch (const SolveQualityError& e) {
      CHECK(e.sub() == 0);
    }
  }
}

}  // TEST_SUITE
