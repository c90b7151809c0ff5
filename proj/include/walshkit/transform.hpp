// Walsh-Paley system, fast Walsh-Hadamard transform, partial sums, Dirichlet
// kernels (two independent routes) and Lebesgue constants.
#pragma once

#include <cstdint>

#include "walshkit/group.hpp"

namespace walshkit {

// Walsh-Fourier coefficients of a level-N step function; entry k is
// fhat(k) = integral of f * w_k. Same dual exact/float storage as
// StepFunction, indexed by frequency instead of position.
class CoefficientVector {
 public:
  CoefficientVector() = default;
  explicit CoefficientVector(StepFunction storage) : data_(std::move(storage)) {}

  int level() const { return data_.level(); }
  Mode mode() const { return data_.mode(); }
  std::size_t size() const { return data_.size(); }
  double value(std::size_t k) const { return data_.value(k); }
  DyadicRational exact_value(std::size_t k) const { return data_.exact_value(k); }

  StepFunction& storage() { return data_; }
  const StepFunction& storage() const { return data_; }

  friend bool operator==(const CoefficientVector& a, const CoefficientVector& b) {
    return a.data_ == b.data_;
  }

 private:
  StepFunction data_;
};

StepFunction rademacher(int k, int level);                 // r_k(x) = (-1)^{x_k}
StepFunction walsh(std::uint64_t n, int level);            // w_n, Paley order

CoefficientVector fwht(const StepFunction& f);             // analysis, carries 2^-N
StepFunction ifwht(const CoefficientVector& c);            // synthesis, unnormalized

// S_n f = sum_{k<n} fhat(k) w_k; requires n <= 2^level.
StepFunction partial_sum(const StepFunction& f, std::uint64_t n);

// D_n = sum_{k<n} w_k, evaluated by direct summation (the oracle route).
StepFunction dirichlet_direct(std::uint64_t n, int level);
// Same kernel through the recursion D_{j+2^m} = D_{2^m} + w_{2^m} D_j,
// O(popcount(n) 2^level).
StepFunction dirichlet_formula(std::uint64_t n, int level);

// ||D_n||_1, exact, evaluated at the minimal sufficient level |n|+1.
DyadicRational lebesgue_constant(std::uint64_t n);
// mu{ x : D_n(x) != 0 }, exact, at level |n|+1.
DyadicRational kernel_support_measure(std::uint64_t n);

}  // namespace walshkit
