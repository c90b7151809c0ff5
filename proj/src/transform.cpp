#include "walshkit/transform.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace walshkit {

namespace {

template <class T>
void butterfly(std::vector<T>& a) {
  const std::size_t n = a.size();
  for (std::size_t len = 1; len < n; len <<= 1) {
    for (std::size_t i = 0; i < n; i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        T u = a[j];
        T v = a[j + len];
        a[j] = u + v;
        a[j + len] = u - v;
      }
    }
  }
}

StepFunction transform_storage(const StepFunction& f, int extra_exp) {
  if (f.is_exact()) {
    std::vector<Int128> nums = f.nums();
    butterfly(nums);
    return StepFunction::from_exact(f.level(), std::move(nums), f.denom_exp() + extra_exp);
  }
  std::vector<double> vals = f.floats();
  butterfly(vals);
  if (extra_exp != 0) {
    double scale = std::ldexp(1.0, -extra_exp);
    for (auto& v : vals) v *= scale;
  }
  return StepFunction::from_values(f.level(), std::move(vals));
}

void check_index_range(std::uint64_t n, int level, const char* what) {
  if (level < 0 || level > kMaxLevel) throw std::invalid_argument(std::string(what) + ": bad level");
  if (n > (std::uint64_t(1) << level))
    throw std::invalid_argument(std::string(what) + ": index exceeds 2^level");
}

}  // namespace

StepFunction rademacher(int k, int level) {
  if (k < 0 || k >= level) throw std::invalid_argument("rademacher: need 0 <= k < level");
  StepFunction f = StepFunction::zeros(level, Mode::Exact);
  std::vector<Int128> nums(f.size());
  for (std::size_t ix = 0; ix < nums.size(); ++ix) nums[ix] = ((ix >> k) & 1) ? -1 : 1;
  return StepFunction::from_exact(level, std::move(nums), 0);
}

StepFunction walsh(std::uint64_t n, int level) {
  check_index_range(n, level, "walsh");
  if (n == (std::uint64_t(1) << level))
    throw std::invalid_argument("walsh: index exceeds resolution");
  std::vector<Int128> nums(std::size_t(1) << level);
  for (std::size_t ix = 0; ix < nums.size(); ++ix)
    nums[ix] = (std::popcount(n & std::uint64_t(ix)) & 1) ? -1 : 1;
  return StepFunction::from_exact(level, std::move(nums), 0);
}

CoefficientVector fwht(const StepFunction& f) {
  return CoefficientVector(transform_storage(f, f.level()));
}

StepFunction ifwht(const CoefficientVector& c) {
  return transform_storage(c.storage(), 0);
}

StepFunction partial_sum(const StepFunction& f, std::uint64_t n) {
  check_index_range(n, f.level(), "partial_sum");
  CoefficientVector c = fwht(f);
  if (c.storage().is_exact()) {
    std::vector<Int128> nums = c.storage().nums();
    for (std::size_t k = n; k < nums.size(); ++k) nums[k] = 0;
    return ifwht(CoefficientVector(
        StepFunction::from_exact(f.level(), std::move(nums), c.storage().denom_exp())));
  }
  std::vector<double> vals = c.storage().floats();
  for (std::size_t k = n; k < vals.size(); ++k) vals[k] = 0.0;
  return ifwht(CoefficientVector(StepFunction::from_values(f.level(), std::move(vals))));
}

StepFunction dirichlet_direct(std::uint64_t n, int level) {
  check_index_range(n, level, "dirichlet_direct");
  if (n == 0) throw std::invalid_argument("dirichlet_direct: n must be positive");
  std::vector<Int128> nums(std::size_t(1) << level, 0);
  for (std::uint64_t k = 0; k < n; ++k)
    for (std::size_t ix = 0; ix < nums.size(); ++ix)
      nums[ix] += (std::popcount(k & std::uint64_t(ix)) & 1) ? -1 : 1;
  return StepFunction::from_exact(level, std::move(nums), 0);
}

StepFunction dirichlet_formula(std::uint64_t n, int level) {
  check_index_range(n, level, "dirichlet_formula");
  if (n == 0) throw std::invalid_argument("dirichlet_formula: n must be positive");
  std::vector<Int128> nums(std::size_t(1) << level, 0);
  // Ascending set bits b: D <- D_{2^b} + w_{2^b} D, starting from D_0 = 0.
  for (int b = 0; b <= level; ++b) {
    if (((n >> b) & 1) == 0) continue;
    const Int128 spike = Int128(1) << b;
    const std::size_t low_mask = (std::size_t(1) << b) - 1;
    for (std::size_t ix = 0; ix < nums.size(); ++ix) {
      Int128 head = (ix & low_mask) == 0 ? spike : 0;
      Int128 prev = ((ix >> b) & 1) ? -nums[ix] : nums[ix];
      nums[ix] = head + prev;
    }
  }
  return StepFunction::from_exact(level, std::move(nums), 0);
}

namespace {

StepFunction kernel_at_native_level(std::uint64_t n) {
  int level = std::bit_width(n);  // |n| + 1
  if (level > kMaxLevel)
    throw std::invalid_argument("kernel: index too large for exact evaluation");
  return dirichlet_formula(n, level);
}

}  // namespace

DyadicRational lebesgue_constant(std::uint64_t n) {
  StepFunction d = kernel_at_native_level(n);
  Int128 sum = 0;
  for (Int128 v : d.nums()) sum += v < 0 ? -v : v;
  // denom_exp of a kernel is 0; the 2^-level factor is the Haar measure.
  return DyadicRational(sum, d.denom_exp() + d.level());
}

DyadicRational kernel_support_measure(std::uint64_t n) {
  StepFunction d = kernel_at_native_level(n);
  Int128 count = 0;
  for (Int128 v : d.nums())
    if (v != 0) ++count;
  return DyadicRational(count, d.level());
}

}  // namespace walshkit
