// Functions on the dyadic group G represented as step functions constant on
// rank-N dyadic intervals.
//
// Binary contract of the repo: the array entry at index ix is the value at the
// point whose group coordinate x_j is bit j of ix (LSB = x_0). Consequently
// the rank-s interval I_s(x) is the residue class { ix : ix mod 2^s == prefix }
// and Walsh evaluation is (-1)^popcount(n AND ix).
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "walshkit/dyadic_rational.hpp"

namespace walshkit {

inline constexpr int kMaxLevel = 30;

enum class Mode { Exact, Float };

struct Point {
  std::uint32_t coords = 0;  // bit j = coordinate x_j
  int level = 0;
};

struct DyadicInterval {
  int rank = 0;               // s
  std::uint32_t prefix = 0;   // fixed coordinates y_0..y_{s-1}, bit j = y_j

  DyadicRational measure() const { return DyadicRational::pow2(-rank); }
  bool contains(std::uint32_t ix) const {
    return (ix & ((std::uint32_t(1) << rank) - 1)) == prefix;
  }
};

// Trailing-zero count clamped to the level: the largest s with ix in I_s(0).
inline int interval_depth(std::uint32_t ix, int level) {
  if (ix == 0) return level;
  int tz = 0;
  while (((ix >> tz) & 1) == 0) ++tz;
  return tz < level ? tz : level;
}

class StepFunction {
 public:
  StepFunction() : num_(1, 0) {}  // the zero function on G at level 0

  static StepFunction zeros(int level, Mode mode);
  static StepFunction constant(int level, const DyadicRational& c);
  static StepFunction constant(int level, double c);
  static StepFunction from_exact(int level, std::vector<Int128> nums, int denom_exp);
  static StepFunction from_values(int level, std::vector<double> values);
  static StepFunction indicator(const DyadicInterval& interval, int level,
                                Mode mode = Mode::Exact);
  // Uniform values in [lo, hi); exact mode quantizes to 12 fractional bits.
  static StepFunction random(int level, std::uint64_t seed, double lo, double hi,
                             Mode mode = Mode::Exact);

  int level() const { return level_; }
  Mode mode() const { return mode_; }
  std::size_t size() const { return std::size_t(1) << level_; }
  bool is_exact() const { return mode_ == Mode::Exact; }

  double value(std::size_t ix) const;
  DyadicRational exact_value(std::size_t ix) const;  // exact mode only
  const std::vector<Int128>& nums() const { return num_; }
  int denom_exp() const { return exp_; }
  const std::vector<double>& floats() const { return val_; }

  StepFunction to_float() const;

  StepFunction translate(const Point& h) const;  // x -> f(x + h)
  StepFunction refine(int level2) const;
  StepFunction coarsen_average(int level2) const;  // conditional expectation E_{level2}
  StepFunction abs() const;
  StepFunction scaled(const DyadicRational& c) const;
  StepFunction scaled(double c) const;

  double integrate() const;
  DyadicRational integrate_exact() const;

  friend StepFunction operator+(const StepFunction& a, const StepFunction& b);
  friend StepFunction operator-(const StepFunction& a, const StepFunction& b);
  friend StepFunction multiply(const StepFunction& a, const StepFunction& b);
  friend bool operator==(const StepFunction& a, const StepFunction& b);

  // Drops common factors of two from the shared denominator.
  void normalize();

 private:
  int level_ = 0;
  Mode mode_ = Mode::Exact;
  std::vector<Int128> num_;  // exact mode: value(ix) = num_[ix] / 2^exp_
  int exp_ = 0;
  std::vector<double> val_;  // float mode
};

}  // namespace walshkit
