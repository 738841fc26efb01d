#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "test_util.hpp"
#include "topomap/error.hpp"
#include "topomap/solve.hpp"

using namespace topomap;

namespace {

QuboProblem random_dense(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> w(-8, 8);
  QuboProblem q;
  q.units = 1;
  for (std::size_t i = 0; i < n; ++i) {
    q.linear.push_back(w(rng));
    q.var_map.push_back({static_cast<int>(i), 0});
    for (std::size_t j = i + 1; j < n; ++j)
      if (int v = w(rng); v != 0 && rng() % 2) q.couplers.push_back({i, j, double(v), false});
  }
  return q;
}

double brute_min(const QuboProblem& q) {
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << q.n_vars()); ++m)
    best = std::min(best, oracle::naive_energy(q, oracle::bits_of(m, q.n_vars())));
  return best;
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-9 * (1 + std::abs(b)); }

}  // namespace

TEST_SUITE("solve") {

TEST_CASE("exact solver") {
  QuboProblem empty;
  auto s0 = solve_exact(empty);
  CHECK(s0.bits().empty());
  CHECK(s0.energy() == 0.0);

  QuboProblem one;
  one.linear = {-1.0};
  one.var_map = {{0, 0}};
  one.units = 1;
  CHECK(solve_exact(one).bits() == BitVector{1});
  one.linear = {2.0};
  CHECK(solve_exact(one).bits() == BitVector{0});

  SUBCASE("ties go to the lexicographically smallest vector") {
    QuboProblem q;
    q.linear = {-1.0, -1.0};
    q.couplers = {{0, 1, 1.0, false}};
    q.var_map = {{0, 0}, {0, 1}};
    q.units = 2;
    // 01 and 10 both reach -1
    CHECK(solve_exact(q).bits() == BitVector{0, 1});
  }
  SUBCASE("size cap") {
    QuboProblem big;
    big.linear.assign(25, 1.0);
    CHECK_THROWS_AS(solve_exact(big), SizeError);
    CHECK_THROWS_AS(solve_exact(one, 0), SizeError);
  }
  SUBCASE("matches brute force") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 60; ++i) {
      auto q = random_dense(rng, 1 + rng() % 12);
      auto s = solve_exact(q);
      CHECK(near(s.energy(), brute_min(q)));
      CHECK(near(s.energy(), oracle::naive_energy(q, s.bits())));
    }
  }
}

TEST_CASE("heuristic solvers") {
  std::mt19937_64 rng(8);
  SolverParams p;
  p.seed = 42;

  SUBCASE("same seed, same answer") {
    for (int i = 0; i < 10; ++i) {
      auto q = random_dense(rng, 30);
      CHECK(solve_tabu(q, p).bits() == solve_tabu(q, p).bits());
      CHECK(solve_anneal(q, p).bits() == solve_anneal(q, p).bits());
      auto p2 = p;
      p2.threads = 2;
      CHECK(solve_tabu(q, p2).bits() == solve_tabu(q, p).bits());
    }
  }
  SUBCASE("reach the exact optimum on small problems") {
    int tabu_hits = 0, sa_hits = 0;
    const int runs = 40;
    for (int i = 0; i < runs; ++i) {
      auto q = random_dense(rng, 4 + rng() % 12);
      double best = solve_exact(q).energy();
      p.seed = i;
      auto t = solve_tabu(q, p);
      auto a = solve_anneal(q, p);
      CHECK(t.energy() >= best - 1e-9);
      CHECK(a.energy() >= best - 1e-9);
      tabu_hits += near(t.energy(), best);
      sa_hits += near(a.energy(), best);
      CHECK(near(t.energy(), oracle::naive_energy(q, t.bits())));
    }
    CHECK(tabu_hits >= runs * 95 / 100);
    CHECK(sa_hits >= runs * 95 / 100);
  }
  SUBCASE("exact <= tabu <= random") {
    for (int i = 0; i < 20; ++i) {
      auto q = random_dense(rng, 14);
      double exact = solve_exact(q).energy();
      double tabu = solve_tabu(q, p).energy();
      double mean_random = 0;
      for (int k = 0; k < 50; ++k) {
        std::vector<std::uint8_t> x(q.n_vars());
        for (auto& b : x) b = rng() & 1;
        mean_random += oracle::naive_energy(q, x) / 50;
      }
      CHECK(exact <= tabu + 1e-9);
      CHECK(tabu <= mean_random);
    }
  }
  SUBCASE("zero time budget returns a flagged start point") {
    auto q = random_dense(rng, 20);
    p.time_budget = std::chrono::milliseconds(0);
    for (auto s : {solve_tabu(q, p), solve_anneal(q, p)}) {
      CHECK(s.truncated);
      CHECK(s.bits().size() == 20);
      CHECK_FALSE(s.warnings.empty());
    }
  }
  SUBCASE("parameter checks") {
    auto q = random_dense(rng, 5);
    SolverParams bad;
    bad.restarts = 0;
    CHECK_THROWS_AS(solve_tabu(q, bad), ConfigError);
    bad = {};
    bad.sa_initial_temp = 1e-4;
    CHECK_THROWS_AS(solve_anneal(q, bad), ConfigError);
    CHECK_THROWS_AS(parse_engine("qpu"), ConfigError);
    CHECK(parse_engine("sa") == Engine::anneal);
    CHECK(to_string(Engine::tabu) == "tabu");
  }
}

TEST_CASE("solution text") {
  QuboProblem q;
  q.linear = {1.0, -2.0, 0.5};
  q.couplers = {{0, 1, -1.0, false}};
  q.var_map = {{0, 0}, {0, 1}, {0, 2}};
  q.units = 3;
  Solution s(q, {1, 1, 0}, "test");
  CHECK(s.energy() == -2.0);
  auto text = export_solution(s);
  auto back = import_solution(text, q);
  CHECK(back.bits() == s.bits());
  CHECK(back.energy() == s.energy());
  CHECK(back.warnings.empty());

  auto odd = import_solution("110\n-5\n", q);
  CHECK(odd.energy() == -2.0);
  CHECK(odd.warnings.size() == 1);
  CHECK(import_solution("011\n", q).energy() == -1.5);

  CHECK_THROWS_AS(import_solution("11\n", q), DimensionError);
  CHECK_THROWS_AS(import_solution("1x0\n", q), ParseError);
  CHECK_THROWS_AS(import_solution("", q), DimensionError);
  CHECK_THROWS_AS(Solution(q, {1, 0}, "short"), DimensionError);
}

}  // TEST_SUITE
