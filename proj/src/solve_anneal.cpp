#include <cmath>
#include <random>

#include "adjacency.hpp"
#include "restarts.hpp"
#include "topomap/error.hpp"
#include "topomap/solve.hpp"

namespace topomap {

Solution solve_anneal(const QuboProblem& q, const SolverParams& params) {
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto deadline = start + params.time_budget;
  const std::size_t n = q.n_vars();
  if (n == 0) throw DimensionError("annealing needs at least one variable");
  detail::Adjacency adj(q);

  auto restart = [&](std::size_t r) {
    auto rng = detail::restart_rng(params.seed, r);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
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

    double t_hot = params.sa_initial_temp;
    if (t_hot == 0.0) {
      for (std::size_t i = 0; i < n; ++i) t_hot = std::max(t_hot, std::abs(fields[i]));
      t_hot = std::max(t_hot, 10.0 * params.sa_final_temp);
    }
    const double t_cold = params.sa_final_temp;
    const std::size_t sweeps = params.sa_sweeps;
    const double ratio =
        sweeps > 1 ? std::pow(t_cold / t_hot, 1.0 / static_cast<double>(sweeps - 1)) : 1.0;

    double temp = t_hot;
    for (std::size_t sweep = 0; sweep < sweeps; ++sweep, temp *= ratio) {
      if ((sweep & 7u) == 0 && std::chrono::steady_clock::now() >= deadline) {
        out.truncated = true;
        break;
      }
      for (std::size_t i = 0; i < n; ++i) {
        double delta = x[i] ? -fields[i] : fields[i];
        ++out.samples;
        if (delta > 0 && unit(rng) >= std::exp(-delta / temp)) continue;
        current += adj.flip(i, x, fields);
        if (detail::energy_less(current, out.energy)) {
          out.energy = current;
          out.bits = x;
        }
      }
    }
    return out;
  };

  auto best = detail::run_restarts(params.restarts, params.threads, restart);
  Solution s(q, std::move(best.bits), "anneal", params.seed);
  s.samples_evaluated = best.samples;
  s.truncated = best.truncated;
  if (params.time_budget.count() == 0) s.warnings.push_back("zero time budget: initial random solution");
  s.elapsed = std::chrono::steady_clock::now() - start;
  return s;
}

}  // namespace topomap
