#include <algorithm>
#include <limits>
#include <random>

#include "adjacency.hpp"
#include "restarts.hpp"
#include "topomap/error.hpp"
#include "topomap/solve.hpp"

namespace topomap {

Solution solve_tabu(const QuboProblem& q, const SolverParams& params) {
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto deadline = start + params.time_budget;
  const std::size_t n = q.n_vars();
  if (n == 0) throw DimensionError("tabu search needs at least one variable");

  const std::uint64_t max_iter =
      params.max_iterations ? params.max_iterations : 20 * n + 1000;
  const std::uint64_t stall =
      params.stall_iterations ? params.stall_iterations : std::max<std::uint64_t>(500, 2 * n);
  const std::size_t tenure =
      params.tabu_tenure ? params.tabu_tenure : std::min<std::size_t>(20, n / 4) + 1;
  detail::Adjacency adj(q);

  auto restart = [&](std::size_t r) {
    auto rng = detail::restart_rng(params.seed, r);
    detail::RestartResult out;
    BitVector x = detail::random_bits(n, rng);
    out.bits = x;
    out.energy = energy(q, x);
    if (params.time_budget.count() == 0) {
      out.truncated = true;
      return out;
    }
    std::vector<double> fields;
    adj.fields(q, x, fields);
    double current = out.energy;
    std::vector<std::uint64_t> tabu_until(n, 0);
    std::uint64_t last_improvement = 0;

    for (std::uint64_t iter = 1; iter <= max_iter; ++iter) {
      if ((iter & 255u) == 0 && std::chrono::steady_clock::now() >= deadline) {
        out.truncated = true;
        break;
      }
      std::size_t pick = n;
      double pick_delta = std::numeric_limits<double>::infinity();
      std::uint64_t ties = 0;
      for (std::size_t i = 0; i < n; ++i) {
        double delta = x[i] ? -fields[i] : fields[i];
        bool aspirated = detail::energy_less(current + delta, out.energy);
        if (tabu_until[i] > iter && !aspirated) continue;
        if (delta < pick_delta) {
          pick = i;
          pick_delta = delta;
          ties = 1;
        } else if (delta == pick_delta && rng() % ++ties == 0) {
          pick = i;
        }
      }
      if (pick == n) {
        // Everything tabu; release the oldest entry.
        pick = static_cast<std::size_t>(
            std::min_element(tabu_until.begin(), tabu_until.end()) - tabu_until.begin());
      }
      current += adj.flip(pick, x, fields);
      tabu_until[pick] = iter + tenure + 1;
      ++out.samples;
      if (detail::energy_less(current, out.energy)) {
        out.energy = current;
        out.bits = x;
        last_improvement = iter;
      } else if (iter - last_improvement > stall) {
        break;
      }
    }
    return out;
  };

  auto best = detail::run_restarts(params.restarts, params.threads, restart);
  Solution s(q, std::move(best.bits), "tabu", params.seed);
  s.samples_evaluated = best.samples;
  s.truncated = best.truncated;
  if (params.time_budget.count() == 0) s.warnings.push_back("zero time budget: initial random solution");
  s.elapsed = std::chrono::steady_clock::now() - start;
  return s;
}

}  // namespace topomap
