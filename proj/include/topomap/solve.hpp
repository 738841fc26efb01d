#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "topomap/qubo.hpp"

namespace topomap {

/// A bit assignment together with its energy. The energy is always
/// recomputed from the problem on construction.
class Solution {
 public:
  Solution(const QuboProblem& q, BitVector bits, std::string engine,
           std::uint64_t seed = 0);

  const BitVector& bits() const noexcept { return bits_; }
  double energy() const noexcept { return energy_; }
  const std::string& engine() const noexcept { return engine_; }
  std::uint64_t seed() const noexcept { return seed_; }

  std::chrono::nanoseconds elapsed{0};
  std::uint64_t samples_evaluated = 0;
  /// The search stopped on its time budget rather than converging.
  bool truncated = false;
  std::vector<std::string> warnings;

 private:
  BitVector bits_;
  double energy_ = 0.0;
  std::string engine_;
  std::uint64_t seed_ = 0;
};

/// Zero-valued knobs pick the documented automatic default.
struct SolverParams {
  std::chrono::milliseconds time_budget{10'000};
  /// Per-restart flip cap; 0 = 20 * n + 1000.
  std::uint64_t max_iterations = 0;
  /// Non-improving flips before a tabu restart ends; 0 = max(500, 2 * n).
  std::uint64_t stall_iterations = 0;
  /// 0 = min(20, n / 4) + 1.
  std::size_t tabu_tenure = 0;
  std::size_t restarts = 4;
  /// 0 = largest single-flip |dE| from the random start.
  double sa_initial_temp = 0.0;
  double sa_final_temp = 1e-3;
  std::size_t sa_sweeps = 500;
  std::uint64_t seed = 0;
  /// Worker threads for restarts; 0 = hardware concurrency.
  std::size_t threads = 1;

  void validate() const;
};

inline constexpr std::size_t kExactMaxVars = 24;

/// Exhaustive minimum over all 2^n bit vectors; ties go to the
/// lexicographically smallest vector (bit 0 most significant).
Solution solve_exact(const QuboProblem& q, std::size_t max_vars = kExactMaxVars);

/// Single-flip tabu search with aspiration and restarts.
Solution solve_tabu(const QuboProblem& q, const SolverParams& params = {});

/// Metropolis single-flip annealing on a geometric temperature schedule.
Solution solve_anneal(const QuboProblem& q, const SolverParams& params = {});

enum class Engine { exact, tabu, anneal };

std::string_view to_string(Engine e);
Engine parse_engine(std::string_view name);

using SolverFn = std::function<Solution(const QuboProblem&)>;

SolverFn make_solver(Engine engine, SolverParams params = {});

/// Solution text: a line of 0/1 characters, optionally followed by an energy
/// line. A differing energy is kept as a warning on the result.
Solution import_solution(std::string_view text, const QuboProblem& q);
std::string export_solution(const Solution& s);

}  // namespace topomap
