#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "topomap/qubo.hpp"

namespace topomap::detail {

/// Symmetric CSR view of the coupler list plus per-variable local fields
/// f_i = h_i + sum_j J_ij x_j, so flipping x_i changes the energy by
/// (1 - 2 x_i) f_i.
class Adjacency {
 public:
  explicit Adjacency(const QuboProblem& q) : n_(q.n_vars()), start_(n_ + 1, 0) {
    for (const auto& c : q.couplers) {
      ++start_[c.i + 1];
      ++start_[c.j + 1];
    }
    for (std::size_t i = 0; i < n_; ++i) start_[i + 1] += start_[i];
    nbr_.resize(start_[n_]);
    val_.resize(start_[n_]);
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (const auto& c : q.couplers) {
      nbr_[fill[c.i]] = static_cast<std::uint32_t>(c.j);
      val_[fill[c.i]++] = c.value;
      nbr_[fill[c.j]] = static_cast<std::uint32_t>(c.i);
      val_[fill[c.j]++] = c.value;
    }
  }

  std::size_t size() const noexcept { return n_; }

  /// Local fields for `x`, written into `fields`.
  void fields(const QuboProblem& q, const std::vector<std::uint8_t>& x,
              std::vector<double>& fields) const {
    fields = q.linear;
    for (std::size_t i = 0; i < n_; ++i)
      if (x[i])
        for (auto k = start_[i]; k < start_[i + 1]; ++k) fields[nbr_[k]] += val_[k];
  }

  /// Flips x_i, keeping `fields` current; returns the energy change.
  double flip(std::size_t i, std::vector<std::uint8_t>& x,
              std::vector<double>& fields) const {
    double delta = x[i] ? -fields[i] : fields[i];
    double sign = x[i] ? -1.0 : 1.0;
    x[i] ^= 1;
    for (auto k = start_[i]; k < start_[i + 1]; ++k) fields[nbr_[k]] += sign * val_[k];
    return delta;
  }

 private:
  std::size_t n_;
  std::vector<std::size_t> start_;
  std::vector<std::uint32_t> nbr_;
  std::vector<double> val_;
};

inline bool energy_less(double a, double b) {
  return a < b - 1e-9 * (1.0 + std::abs(b));
}

inline bool energy_equal(double a, double b) {
  return std::abs(a - b) <= 1e-9 * (1.0 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace topomap::detail
