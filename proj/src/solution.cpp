#include <cmath>
#include <sstream>

#include "text_util.hpp"
#include "topomap/error.hpp"
#include "topomap/solve.hpp"

namespace topomap {

Solution::Solution(const QuboProblem& q, BitVector bits, std::string engine,
                   std::uint64_t seed)
    : bits_(std::move(bits)), energy_(topomap::energy(q, bits_)), engine_(std::move(engine)),
      seed_(seed) {}

void SolverParams::validate() const {
  if (time_budget.count() < 0) throw ConfigError("time budget must not be negative");
  if (restarts == 0) throw ConfigError("at least one restart is required");
  if (sa_sweeps == 0) throw ConfigError("annealing needs at least one sweep");
  if (!(sa_final_temp > 0)) throw ConfigError("final temperature must be positive");
  if (sa_initial_temp != 0.0 && !(sa_initial_temp > sa_final_temp))
    throw ConfigError("initial temperature must exceed the final temperature");
}


std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::exact: return "exact";
    case Engine::tabu: return "tabu";
    case Engine::anneal: return "anneal";
  }
  return "?";
}

Engine parse_engine(std::string_view name) {
  if (name == "exact") return Engine::exact;
  if (name == "tabu") return Engine::tabu;
  if (name == "anneal" || name == "sa") return Engine::anneal;
  throw ConfigError("unknown solver '" + std::string(name) + "'");
}

SolverFn make_solver(Engine engine, SolverParams params) {
  params.validate();
  switch (engine) {
    case Engine::exact:
      return [](const QuboProblem& q) { return solve_exact(q); };
    case Engine::tabu:
      return [params](const QuboProblem& q) { return solve_tabu(q, params); };
    case Engine::anneal:
      return [params](const QuboProblem& q) { return solve_anneal(q, params); };
  }
  throw ConfigError("unknown solver");
}

Solution import_solution(std::string_view text, const QuboProblem& q) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    lines.push_back(line.substr(b, e - b + 1));
  }
  if (q.n_vars() == 0) return Solution(q, {}, "import");
  if (lines.empty()) throw DimensionError("solution text is empty");
  const std::string& row = lines[0];
  BitVector bits;
  bits.reserve(row.size());
  for (char c : row) {
    if (c != '0' && c != '1') throw ParseError(1, "solution bits must be 0 or 1");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  if (bits.size() != q.n_vars())
    throw DimensionError("solution has " + std::to_string(bits.size()) +
                         " bits, problem has " + std::to_string(q.n_vars()));
  Solution s(q, std::move(bits), "import");
  if (lines.size() > 1) {
    double reported = detail::to_double(lines[1], 2);
    if (std::abs(reported - s.energy()) > 1e-9 * (1.0 + std::abs(s.energy())))
      s.warnings.push_back("reported energy " + detail::fmt(reported) +
                           " differs from recomputed " + detail::fmt(s.energy()));
  }
  return s;
}

std::string export_solution(const Solution& s) {
  std::string out;
  out.reserve(s.bits().size() + 32);
  for (auto b : s.bits()) out.push_back(b ? '1' : '0');
  out += '\n';
  out += detail::fmt(s.energy());
  out += '\n';
  return out;
}

}  // namespace topomap
