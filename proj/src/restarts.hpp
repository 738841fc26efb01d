#pragma once

#include <algorithm>
#include <future>
#include <random>
#include <thread>
#include <vector>

#include "adjacency.hpp"
#include "topomap/qubo.hpp"

namespace topomap {

namespace detail {

struct RestartResult {
  BitVector bits;
  double energy = 0.0;
  std::uint64_t samples = 0;
  bool truncated = false;
};

inline std::mt19937_64 restart_rng(std::uint64_t seed, std::size_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  return std::mt19937_64(seq);
}

inline BitVector random_bits(std::size_t n, std::mt19937_64& rng) {
  BitVector x(n);
  for (auto& b : x) b = static_cast<std::uint8_t>(rng() & 1u);
  return x;
}

/// Runs `restart(r)` for every r and keeps the lowest energy, earliest
/// restart on ties.
template <class F>
RestartResult run_restarts(std::size_t restarts, std::size_t threads, F&& restart) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<RestartResult> results(restarts);
  if (threads == 1 || restarts == 1) {
    for (std::size_t r = 0; r < restarts; ++r) results[r] = restart(r);
  } else {
    for (std::size_t base = 0; base < restarts; base += threads) {
      std::vector<std::future<RestartResult>> batch;
      for (std::size_t r = base; r < std::min(restarts, base + threads); ++r)
        batch.push_back(std::async(std::launch::async, [&restart, r] { return restart(r); }));
      for (std::size_t k = 0; k < batch.size(); ++k) results[base + k] = batch[k].get();
    }
  }
  RestartResult best = std::move(results[0]);
  std::uint64_t samples = best.samples;
  bool truncated = best.truncated;
  for (std::size_t r = 1; r < restarts; ++r) {
    samples += results[r].samples;
    truncated = truncated || results[r].truncated;
    if (energy_less(results[r].energy, best.energy)) best = std::move(results[r]);
  }
  best.samples = samples;
  best.truncated = truncated;
  return best;
}

}  // namespace detail

}  // namespace topomap
