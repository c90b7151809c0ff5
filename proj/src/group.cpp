#include "walshkit/group.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace walshkit {

namespace {

void check_level(int level) {
  if (level < 0 || level > kMaxLevel)
    throw std::invalid_argument("StepFunction: level must lie in [0, " +
                                std::to_string(kMaxLevel) + "]");
}

void check_same_shape(const StepFunction& a, const StepFunction& b) {
  if (a.level() != b.level())
    throw std::invalid_argument("StepFunction: level mismatch");
}

}  // namespace

StepFunction StepFunction::zeros(int level, Mode mode) {
  check_level(level);
  StepFunction f;
  f.level_ = level;
  f.mode_ = mode;
  if (mode == Mode::Exact)
    f.num_.assign(std::size_t(1) << level, 0);
  else
    f.val_.assign(std::size_t(1) << level, 0.0);
  return f;
}

StepFunction StepFunction::constant(int level, const DyadicRational& c) {
  StepFunction f = zeros(level, Mode::Exact);
  std::fill(f.num_.begin(), f.num_.end(), c.num());
  f.exp_ = c.exp();
  return f;
}

StepFunction StepFunction::constant(int level, double c) {
  StepFunction f = zeros(level, Mode::Float);
  std::fill(f.val_.begin(), f.val_.end(), c);
  return f;
}

StepFunction StepFunction::from_exact(int level, std::vector<Int128> nums, int denom_exp) {
  check_level(level);
  if (nums.size() != std::size_t(1) << level)
    throw std::invalid_argument("StepFunction: values size must be 2^level");
  if (denom_exp < 0) throw std::invalid_argument("StepFunction: negative denominator exponent");
  StepFunction f;
  f.level_ = level;
  f.mode_ = Mode::Exact;
  f.num_ = std::move(nums);
  f.exp_ = denom_exp;
  f.normalize();
  return f;
}

StepFunction StepFunction::from_values(int level, std::vector<double> values) {
  check_level(level);
  if (values.size() != std::size_t(1) << level)
    throw std::invalid_argument("StepFunction: values size must be 2^level");
  StepFunction f;
  f.level_ = level;
  f.mode_ = Mode::Float;
  f.val_ = std::move(values);
  return f;
}

StepFunction StepFunction::indicator(const DyadicInterval& interval, int level, Mode mode) {
  if (interval.rank < 0 || interval.rank > level)
    throw std::invalid_argument("indicator: interval rank must lie in [0, level]");
  StepFunction f = zeros(level, mode);
  for (std::size_t ix = 0; ix < f.size(); ++ix) {
    if (interval.contains(std::uint32_t(ix))) {
      if (mode == Mode::Exact)
        f.num_[ix] = 1;
      else
        f.val_[ix] = 1.0;
    }
  }
  return f;
}

StepFunction StepFunction::random(int level, std::uint64_t seed, double lo, double hi,
                                  Mode mode) {
  check_level(level);
  if (!(lo < hi)) throw std::invalid_argument("random: empty value range");
  std::mt19937_64 rng(seed);
  auto uniform01 = [&rng] { return double(rng() >> 11) * 0x1.0p-53; };
  if (mode == Mode::Float) {
    std::vector<double> v(std::size_t(1) << level);
    for (auto& x : v) x = lo + (hi - lo) * uniform01();
    return from_values(level, std::move(v));
  }
  // 12 fractional bits keep numerators small across downstream transforms.
  constexpr int kFracBits = 12;
  std::vector<Int128> nums(std::size_t(1) << level);
  for (auto& n : nums) {
    double v = lo + (hi - lo) * uniform01();
    n = Int128(std::llround(v * double(1 << kFracBits)));
  }
  return from_exact(level, std::move(nums), kFracBits);
}

double StepFunction::value(std::size_t ix) const {
  if (mode_ == Mode::Exact) return std::ldexp(double(num_[ix]), -exp_);
  return val_[ix];
}

DyadicRational StepFunction::exact_value(std::size_t ix) const {
  if (mode_ != Mode::Exact)
    throw std::invalid_argument("exact_value: function is in float mode");
  return DyadicRational(num_[ix], exp_);
}

StepFunction StepFunction::to_float() const {
  if (mode_ == Mode::Float) return *this;
  std::vector<double> v(size());
  for (std::size_t ix = 0; ix < v.size(); ++ix) v[ix] = value(ix);
  return from_values(level_, std::move(v));
}

StepFunction StepFunction::translate(const Point& h) const {
  if (h.level != level_)
    throw std::invalid_argument("translate: point level mismatch");
  StepFunction f = zeros(level_, mode_);
  f.exp_ = exp_;
  for (std::size_t ix = 0; ix < size(); ++ix) {
    std::size_t src = ix ^ h.coords;
    if (mode_ == Mode::Exact)
      f.num_[ix] = num_[src];
    else
      f.val_[ix] = val_[src];
  }
  return f;
}

StepFunction StepFunction::refine(int level2) const {
  if (level2 < level_) throw std::invalid_argument("refine: target level below current");
  check_level(level2);
  StepFunction f = zeros(level2, mode_);
  f.exp_ = exp_;
  std::size_t mask = size() - 1;
  for (std::size_t ix = 0; ix < f.size(); ++ix) {
    if (mode_ == Mode::Exact)
      f.num_[ix] = num_[ix & mask];
    else
      f.val_[ix] = val_[ix & mask];
  }
  return f;
}

StepFunction StepFunction::coarsen_average(int level2) const {
  if (level2 > level_) throw std::invalid_argument("coarsen_average: target level above current");
  if (level2 < 0) throw std::invalid_argument("coarsen_average: negative level");
  StepFunction f = zeros(level2, mode_);
  int drop = level_ - level2;
  std::size_t classes = f.size();
  if (mode_ == Mode::Exact) {
    f.exp_ = exp_ + drop;
    for (std::size_t c = 0; c < classes; ++c) {
      Int128 sum = 0;
      for (std::size_t t = 0; t < (std::size_t(1) << drop); ++t) sum += num_[c + (t << level2)];
      f.num_[c] = sum;
    }
    f.normalize();
  } else {
    double scale = std::ldexp(1.0, -drop);
    for (std::size_t c = 0; c < classes; ++c) {
      double sum = 0;
      for (std::size_t t = 0; t < (std::size_t(1) << drop); ++t) sum += val_[c + (t << level2)];
      f.val_[c] = sum * scale;
    }
  }
  return f;
}

StepFunction StepFunction::abs() const {
  StepFunction f = *this;
  if (mode_ == Mode::Exact)
    for (auto& n : f.num_) n = n < 0 ? -n : n;
  else
    for (auto& v : f.val_) v = std::fabs(v);
  return f;
}

StepFunction StepFunction::scaled(const DyadicRational& c) const {
  if (mode_ == Mode::Float) return scaled(c.to_double());
  StepFunction f = *this;
  for (auto& n : f.num_) n *= c.num();
  f.exp_ += c.exp();
  f.normalize();
  return f;
}

StepFunction StepFunction::scaled(double c) const {
  StepFunction f = to_float();
  for (auto& v : f.val_) v *= c;
  return f;
}

double StepFunction::integrate() const {
  if (mode_ == Mode::Exact) return integrate_exact().to_double();
  double sum = 0;
  for (double v : val_) sum += v;
  return std::ldexp(sum, -level_);
}

DyadicRational StepFunction::integrate_exact() const {
  if (mode_ != Mode::Exact)
    throw std::invalid_argument("integrate_exact: function is in float mode");
  Int128 sum = 0;
  for (Int128 n : num_) sum += n;
  return DyadicRational(sum, exp_ + level_);
}

StepFunction operator+(const StepFunction& a, const StepFunction& b) {
  check_same_shape(a, b);
  if (a.mode_ == Mode::Float || b.mode_ == Mode::Float) {
    StepFunction fa = a.to_float(), fb = b.to_float();
    for (std::size_t ix = 0; ix < fa.size(); ++ix) fa.val_[ix] += fb.val_[ix];
    return fa;
  }
  StepFunction f = StepFunction::zeros(a.level_, Mode::Exact);
  f.exp_ = std::max(a.exp_, b.exp_);
  int sa = f.exp_ - a.exp_, sb = f.exp_ - b.exp_;
  for (std::size_t ix = 0; ix < f.size(); ++ix)
    f.num_[ix] = (a.num_[ix] << sa) + (b.num_[ix] << sb);
  f.normalize();
  return f;
}

StepFunction operator-(const StepFunction& a, const StepFunction& b) {
  return a + b.scaled(DyadicRational(-1));
}

StepFunction multiply(const StepFunction& a, const StepFunction& b) {
  check_same_shape(a, b);
  if (a.mode_ == Mode::Float || b.mode_ == Mode::Float) {
    StepFunction fa = a.to_float(), fb = b.to_float();
    for (std::size_t ix = 0; ix < fa.size(); ++ix) fa.val_[ix] *= fb.val_[ix];
    return fa;
  }
  StepFunction f = StepFunction::zeros(a.level_, Mode::Exact);
  f.exp_ = a.exp_ + b.exp_;
  for (std::size_t ix = 0; ix < f.size(); ++ix) f.num_[ix] = a.num_[ix] * b.num_[ix];
  f.normalize();
  return f;
}

bool operator==(const StepFunction& a, const StepFunction& b) {
  if (a.level_ != b.level_ || a.mode_ != b.mode_) return false;
  if (a.mode_ == Mode::Float) return a.val_ == b.val_;
  return a.exp_ == b.exp_ && a.num_ == b.num_;
}

void StepFunction::normalize() {
  if (mode_ != Mode::Exact || exp_ == 0) return;
  int min_tz = exp_;
  for (Int128 n : num_) {
    if (n == 0) continue;
    unsigned __int128 u = n < 0 ? -(unsigned __int128)n : (unsigned __int128)n;
    int tz = 0;
    while (tz < min_tz && ((u >> tz) & 1) == 0) ++tz;
    min_tz = tz;
    if (min_tz == 0) return;
  }
  bool all_zero = true;
  for (Int128 n : num_)
    if (n != 0) {
      all_zero = false;
      break;
    }
  if (all_zero) {
    exp_ = 0;
    return;
  }
  for (auto& n : num_) n >>= min_tz;
  exp_ -= min_tz;
}

}  // namespace walshkit
