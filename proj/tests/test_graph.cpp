#include <doctest.h>

#include <random>
#include <set>

#include "oracle.hpp"
#include "test_util.hpp"
#include "topomap/error.hpp"
#include "topomap/graph.hpp"

using namespace topomap;
using testutil::data;

TEST_SUITE("graph") {

TEST_CASE("tcg parsing") {
  SUBCASE("ultrasound fixture has 15 tasks and 15 edges") {
    auto g = parse_tcg(data("ultrasound.tcg"));
    CHECK(g.size() == 15);
    CHECK(g.edges().size() == 15);
    CHECK(g.flavor() == Flavor::classical);
  }
  SUBCASE("comments only") {
    auto g = parse_tcg("# nothing here\n\n   # still nothing\n");
    CHECK(g.size() == 0);
    CHECK(g.edges().empty());
  }
  SUBCASE("dangling edge names the missing task") {
    try {
      parse_tcg("t 0 1\nt 5 1\ne 0 5 9 10\n");
      FAIL("expected a reference error");
    } catch (const ReferenceError& e) {
      CHECK(std::string(e.what()).find('9') != std::string::npos);
    }
  }
  SUBCASE("malformed line reports its number") {
    try {
      parse_tcg("t 0 1\n\nt 1 abc\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("cycle reports an edge on the cycle") {
    try {
      parse_tcg("t 0 1\nt 1 1\nt 2 1\ne 0 0 1 1\ne 1 1 2 1\ne 2 2 1 1\n");
      FAIL("expected a cycle error");
    } catch (const CycleError& e) {
      CHECK((e.edge_id() == 1 || e.edge_id() == 2));
    }
  }
  SUBCASE("duplicates and negatives are rejected") {
    CHECK_THROWS_AS(parse_tcg("t 0 1\nt 0 2\n"), ReferenceError);
    CHECK_THROWS_AS(parse_tcg("t 0 -1\n"), RangeError);
    CHECK_THROWS_AS(parse_tcg("t 0 1\nt 1 1\ne 0 0 1 -2\n"), RangeError);
    CHECK_THROWS_AS(parse_tcg("x 0 1\n"), ParseError);
  }
  SUBCASE("serialize round trip") {
    for (const char* f : {"demo.tcg", "ultrasound.tcg", "rs_decoder.tcg"}) {
      auto g = parse_tcg(data(f));
      CHECK(parse_tcg(serialize_tcg(g)) == g);
    }
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
      auto c = oracle::random_classical(rng);
      CHECK(parse_tcg(serialize_tcg(c.graph)) == c.graph);
    }
  }
}

TEST_CASE("circuit parsing") {
  SUBCASE("h then cx") {
    auto g = parse_circuit("q 2\ng 0 h 0\ng 1 cx 0 1\n");
    REQUIRE(g.size() == 3);
    CHECK(g.flavor() == Flavor::quantum);
    int pairs = 0, cont = 0;
    for (const auto& e : g.edges()) {
      if (e.kind == EdgeKind::gate_pair) {
        ++pairs;
        CHECK(g.task(e.src).logical_qubit == 0);  // control
        CHECK(g.task(e.dst).logical_qubit == 1);  // target
      } else if (e.kind == EdgeKind::continuity) {
        ++cont;
        CHECK(g.task(e.src).gate == "h");
        CHECK(g.task(e.dst).gate == "cx");
        CHECK(g.task(e.dst).logical_qubit == 0);
      }
    }
    CHECK(pairs == 1);
    CHECK(cont == 1);
  }
  SUBCASE("one single-qubit gate") {
    auto g = parse_circuit("q 3\ng 0 x 2\n");
    CHECK(g.size() == 1);
    CHECK(g.edges().empty());
  }
  SUBCASE("50-gate benchmark task count matches its gate mix") {
    std::string text = data("circuits/bench50.qc");
    std::istringstream in(text);
    int ones = 0, twos = 0;
    for (std::string line; std::getline(in, line);) {
      std::istringstream ls(line);
      std::string tag, id, kind;
      ls >> tag >> id >> kind;
      if (tag != "g") continue;
      (kind == "cx" ? twos : ones)++;
    }
    CHECK(ones + twos == 50);
    auto g = parse_circuit(text);
    CHECK(g.size() == static_cast<std::size_t>(ones + 2 * twos));
    CHECK(g.logical_qubits() == 5);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse_circuit("q 2\ng 0 frobnicate 0\n"), ParseError);
    CHECK_THROWS_AS(parse_circuit("q 2\ng 0 h 2\n"), ReferenceError);
    CHECK_THROWS_AS(parse_circuit("q 2\ng 0 cx 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_circuit("q 2\ng 0 cx 1\n"), ParseError);
  }
}

TEST_CASE("architecture parsing") {
  SUBCASE("2x2 mesh with link cost 2") {
    auto a = parse_arch("mesh 2 2\nlinkcost 2\n");
    CHECK(a.kind() == ArchKind::classical);
    CHECK(a.unit_count() == 4);
    CHECK(a.links().size() == 4);
    for (const auto& l : a.links()) {
      CHECK_FALSE(l.directed);
      CHECK(l.attr == 2.0);
    }
  }
  SUBCASE("Vigo-shaped chip") {
    auto a = parse_arch(data("vigo.arcq"));
    CHECK(a.kind() == ArchKind::quantum);
    CHECK(a.unit_count() == 5);
    CHECK(a.links().size() == 4);
    for (const auto& l : a.links()) CHECK(l.directed);
    CHECK(a.gate_fidelity(1, 3).has_value());
    CHECK_FALSE(a.gate_fidelity(3, 1).has_value());
  }
  SUBCASE("single unit") {
    auto a = parse_arch("mesh 1 1\n");
    CHECK(a.unit_count() == 1);
    CHECK(a.links().empty());
    CHECK(hop_cost(a, 0, 0) == 0.0);
  }
  SUBCASE("default swap fidelity is the cubed mean gate fidelity") {
    auto a = parse_arch("qubits 2\nq 0 0.99\nq 1 0.99\nedge 0 1 0.9\nedge 1 0 0.8\n");
    CHECK(a.f_swap() == doctest::Approx(0.85 * 0.85 * 0.85).epsilon(1e-15));
    auto b = parse_arch("qubits 1\nq 0 0.99\n");
    CHECK_THROWS_AS(b.f_swap(), ConfigError);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse_arch("qubits 3\nedge 0 1 0.9\n"), ConnectivityError);
    CHECK_THROWS_AS(parse_arch("qubits 2\nq 0 1.5\nedge 0 1 0.9\n"), RangeError);
    CHECK_THROWS_AS(parse_arch("qubits 2\nedge 0 1 0\n"), RangeError);
    CHECK_THROWS_AS(parse_arch("qubits 2\nedge 0 1 0.9\nfswap 2\n"), RangeError);
    CHECK_THROWS_AS(parse_arch("mesh 2 2\npu 7 1\n"), ReferenceError);
    CHECK_THROWS_AS(parse_arch("linkcost 2\n"), ParseError);
  }
  SUBCASE("serialize round trip") {
    for (const char* f : {"mesh2x2_hetero.arc", "vigo.arcq", "qx2.arcq", "mesh8x8.arc"}) {
      auto a = parse_arch(data(f));
      auto b = parse_arch(serialize_arch(a));
      CHECK(b.unit_count() == a.unit_count());
      CHECK(b.links().size() == a.links().size());
      for (int p = 0; p < static_cast<int>(a.unit_count()); ++p)
        for (int r = 0; r < static_cast<int>(a.unit_count()); ++r)
          CHECK(a.hop_cost(p, r) == b.hop_cost(p, r));
    }
  }
}

TEST_CASE("hop cost") {
  auto a = parse_arch("mesh 2 2\nlinkcost 2\n");
  CHECK(hop_cost(a, 0, 3) == 4.0);
  CHECK(hop_cost(a, 1, 2) == 4.0);
  CHECK(hop_cost(a, 0, 1) == 2.0);
  for (int p = 0; p < 4; ++p) CHECK(hop_cost(a, p, p) == 0.0);
  CHECK_THROWS_AS(hop_cost(a, 0, 4), ReferenceError);

  SUBCASE("matches Floyd-Warshall, symmetric, triangle inequality") {
    for (const char* f : {"mesh2x2.arc", "mesh4x4.arc", "mesh8x8.arc", "vigo.arcq", "qx2.arcq",
                          "line3.arcq", "mesh2x2_hetero.arc"}) {
      auto arch = parse_arch(data(f));
      auto ref = oracle::hop_table(arch);
      const int n = static_cast<int>(arch.unit_count());
      const double scale = arch.kind() == ArchKind::classical ? arch.link_cost() : 1.0;
      int diameter = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          CHECK(arch.hop_count(i, j) == ref[i][j]);
          CHECK(arch.hop_cost(i, j) == scale * ref[i][j]);
          CHECK(arch.hop_cost(i, j) == arch.hop_cost(j, i));
          diameter = std::max(diameter, ref[i][j]);
          for (int k = 0; k < n; ++k)
            CHECK(arch.hop_cost(i, k) <= arch.hop_cost(i, j) + arch.hop_cost(j, k));
        }
      CHECK(arch.diameter() == diameter);
    }
  }
}

namespace {

void check_schedule(const TaskGraph& g, const LevelSchedule& s, std::size_t capacity) {
  std::set<int> seen;
  CHECK(s.task_count() == g.size());
  for (std::size_t L = 0; L < s.level_count(); ++L) {
    CHECK(s.levels[L].size() <= capacity);
    CHECK_FALSE(s.levels[L].empty());
    CHECK(std::is_sorted(s.levels[L].begin(), s.levels[L].end()));
    for (int t : s.levels[L]) {
      CHECK(seen.insert(t).second);
      CHECK(s.level_of.at(t) == L);
    }
  }
  CHECK(seen.size() == g.size());
  for (const auto& e : g.edges()) {
    if (e.kind == EdgeKind::gate_pair)
      CHECK(s.level_of.at(e.src) == s.level_of.at(e.dst));
    else
      CHECK(s.level_of.at(e.src) < s.level_of.at(e.dst));
  }
}

}  // namespace

TEST_CASE("dependency levels") {
  SUBCASE("chain") {
    auto g = parse_tcg("t 0 1\nt 1 1\nt 2 1\ne 0 0 1 1\ne 1 1 2 1\n");
    auto s = compute_levels(g, parse_arch("mesh 2 2\n"));
    CHECK(s.levels == std::vector<std::vector<int>>{{0}, {1}, {2}});
  }
  SUBCASE("five independent tasks on four units") {
    auto g = parse_tcg("t 0 1\nt 1 1\nt 2 1\nt 3 1\nt 4 1\n");
    auto s = compute_levels(g, parse_arch("mesh 2 2\n"));
    CHECK(s.levels == std::vector<std::vector<int>>{{0, 1, 2, 3}, {4}});
    CHECK(s.capacity == 4);
  }
  SUBCASE("nine independent tasks on four units") {
    std::string text;
    for (int i = 0; i < 9; ++i) text += "t " + std::to_string(i) + " 1\n";
    auto s = compute_levels(parse_tcg(text), parse_arch("mesh 2 2\n"));
    CHECK(s.levels == std::vector<std::vector<int>>{{0, 1, 2, 3}, {4, 5, 6, 7}, {8}});
  }
  SUBCASE("deferral pushes successors down") {
    // 0..4 independent, 4 feeds 5: deferring 4 must move 5 below it.
    auto g = parse_tcg("t 0 1\nt 1 1\nt 2 1\nt 3 1\nt 4 1\nt 5 1\ne 0 4 5 1\n");
    auto s = compute_levels(g, parse_arch("mesh 2 2\n"));
    check_schedule(g, s, 4);
    CHECK(s.level_of.at(4) == 1);
    CHECK(s.level_of.at(5) == 2);
  }
  SUBCASE("gate-pair partners move together") {
    // three cx on disjoint qubits need six slots; capacity 5 defers the last pair.
    auto g = parse_circuit("q 6\ng 0 cx 0 1\ng 1 cx 2 3\ng 2 cx 4 5\n");
    auto s = compute_levels(g, 5);
    check_schedule(g, s, 5);
    CHECK(s.level_count() == 2);
    CHECK(s.levels[1].size() == 2);
  }
  SUBCASE("a pair wider than capacity cannot be scheduled") {
    auto g = parse_circuit("q 2\ng 0 cx 0 1\n");
    CHECK_THROWS_AS(compute_levels(g, 1), CapacityError);
  }
  SUBCASE("random DAGs satisfy every schedule invariant") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 1000; ++iter) {
      std::uniform_int_distribution<int> size(0, 50);
      int n = size(rng);
      std::string text;
      for (int i = 0; i < n; ++i) text += "t " + std::to_string(i * 2 + 1) + " 1\n";
      int eid = 0;
      std::bernoulli_distribution coin(std::min(1.0, 3.0 / std::max(n, 1)));
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (coin(rng))
            text += "e " + std::to_string(eid++) + " " + std::to_string(a * 2 + 1) + " " +
                    std::to_string(b * 2 + 1) + " 1\n";
      auto g = parse_tcg(text);
      std::size_t cap = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
      check_schedule(g, compute_levels(g, cap), cap);
    }
  }
  SUBCASE("random circuits keep gate pairs together") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 300; ++iter) {
      auto c = oracle::random_quantum(rng, 5, 12);
      check_schedule(c.graph, compute_levels(c.graph, c.arch), c.arch.unit_count());
    }
  }
}

}  // TEST_SUITE
