#include <bit>
#include <chrono>

#include "adjacency.hpp"
#include "topomap/error.hpp"
#include "topomap/solve.hpp"

namespace topomap {

namespace {

// Lexicographic order with bit 0 as the most significant position.
bool lex_less(std::uint64_t a, std::uint64_t b) {
  std::uint64_t diff = a ^ b;
  if (diff == 0) return false;
  std::uint64_t lowest = diff & (~diff + 1);
  return (a & lowest) == 0;
}

BitVector unpack(std::uint64_t mask, std::size_t n) {
  BitVector bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((mask >> i) & 1u);
  return bits;
}

}  // namespace

Solution solve_exact(const QuboProblem& q, std::size_t max_vars) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = q.n_vars();
  if (n > max_vars || n >= 63)
    throw SizeError("exact solver is capped at " + std::to_string(max_vars) +
                    " variables, problem has " + std::to_string(n));

  detail::Adjacency adj(q);
  BitVector x(n, 0);
  std::vector<double> fields = q.linear;
  std::uint64_t mask = 0;
  double running = 0.0;
  std::uint64_t best_mask = 0;
  double best = 0.0;

  // Gray-code walk: step k flips the bit at the position of k's lowest set bit.
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    auto b = static_cast<std::size_t>(std::countr_zero(k));
    running += adj.flip(b, x, fields);
    mask ^= std::uint64_t{1} << b;
    // The running sum drifts; confirm near-best candidates exactly.
    if (running > best + 1e-6 * (1.0 + std::abs(best))) continue;
    double exact = energy(q, x);
    if (detail::energy_less(exact, best) ||
        (detail::energy_equal(exact, best) && lex_less(mask, best_mask))) {
      if (detail::energy_less(exact, best)) best = exact;
      best_mask = mask;
    }
    running = exact;
  }

  Solution s(q, unpack(best_mask, n), "exact");
  s.samples_evaluated = total;
  s.elapsed = std::chrono::steady_clock::now() - start;
  return s;
}

}  // namespace topomap
