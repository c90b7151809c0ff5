#include "walshkit/norms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "walshkit/parallel.hpp"

namespace walshkit {

namespace {

void check_p(double p) {
  if (!(p > 0.0)) throw std::invalid_argument("norm: p must be positive");
}

}  // namespace

NormValue lp_norm(const StepFunction& f, double p) {
  check_p(p);
  NormValue r;
  r.p = p;
  if (p == 1.0 && f.is_exact()) {
    Int128 sum = 0;
    for (Int128 v : f.nums()) sum += v < 0 ? -v : v;
    r.exact = DyadicRational(sum, f.denom_exp() + f.level());
    r.value = r.exact->to_double();
    return r;
  }
  double sum = 0.0;
  for (std::size_t ix = 0; ix < f.size(); ++ix) sum += std::pow(std::fabs(f.value(ix)), p);
  r.value = std::pow(std::ldexp(sum, -f.level()), 1.0 / p);
  return r;
}

NormValue weak_lp_sup(const StepFunction& f, double p) {
  check_p(p);
  NormValue r;
  r.p = p;
  if (p == 1.0 && f.is_exact()) {
    // Distinct |numerators| descending with cumulative counts.
    std::map<Int128, Int128> counts;
    for (Int128 v : f.nums()) {
      if (v == 0) continue;
      ++counts[v < 0 ? -v : v];
    }
    DyadicRational best(0);
    Int128 cumulative = 0;
    for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
      cumulative += it->second;
      DyadicRational candidate(it->first * cumulative, f.denom_exp() + f.level());
      best = std::max(best, candidate);
    }
    r.exact = best;
    r.value = best.to_double();
    return r;
  }
  std::vector<double> mags(f.size());
  for (std::size_t ix = 0; ix < f.size(); ++ix) mags[ix] = std::fabs(f.value(ix));
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double best = 0.0;
  for (std::size_t i = 0; i < mags.size(); ++i) {
    if (mags[i] == 0.0) break;
    if (i + 1 < mags.size() && mags[i + 1] == mags[i]) continue;  // not yet the full level set
    double measure = std::ldexp(double(i + 1), -f.level());
    best = std::max(best, std::pow(mags[i], p) * measure);
  }
  r.value = best;
  return r;
}

NormValue weak_lp_norm(const StepFunction& f, double p) {
  NormValue sup = weak_lp_sup(f, p);
  NormValue r;
  r.p = p;
  if (p == 1.0 && sup.exact) {
    r.exact = sup.exact;
    r.value = sup.value;
  } else {
    r.value = std::pow(sup.value, 1.0 / p);
  }
  return r;
}

StepFunction maximal_function(const StepFunction& f) {
  if (f.is_exact()) {
    const int L = f.level();
    // peak is kept at the fixed scale denom_exp + L; avg after s merge steps
    // holds 2^s * E_{L-s} f at scale denom_exp.
    std::vector<Int128> avg = f.nums();
    std::vector<Int128> peak(avg.size());
    for (std::size_t ix = 0; ix < avg.size(); ++ix) {
      Int128 m = avg[ix] < 0 ? -avg[ix] : avg[ix];
      peak[ix] = m << L;
    }
    int s = 0;
    for (int n = L - 1; n >= 0; --n) {
      std::size_t bit = std::size_t(1) << n;
      for (std::size_t ix = 0; ix < avg.size(); ++ix) {
        if (ix & bit) continue;
        Int128 merged = avg[ix] + avg[ix | bit];
        avg[ix] = merged;
        avg[ix | bit] = merged;
      }
      ++s;
      for (std::size_t ix = 0; ix < avg.size(); ++ix) {
        Int128 m = avg[ix] < 0 ? -avg[ix] : avg[ix];
        Int128 candidate = m << (L - s);
        if (candidate > peak[ix]) peak[ix] = candidate;
      }
    }
    return StepFunction::from_exact(L, std::move(peak), f.denom_exp() + L);
  }
  std::vector<double> avg = f.floats();
  std::vector<double> peak(avg.size());
  for (std::size_t ix = 0; ix < avg.size(); ++ix) peak[ix] = std::fabs(avg[ix]);
  for (int n = f.level() - 1; n >= 0; --n) {
    std::size_t bit = std::size_t(1) << n;
    for (std::size_t ix = 0; ix < avg.size(); ++ix) {
      if (ix & bit) continue;
      double merged = 0.5 * (avg[ix] + avg[ix | bit]);
      avg[ix] = merged;
      avg[ix | bit] = merged;
    }
    for (std::size_t ix = 0; ix < avg.size(); ++ix)
      peak[ix] = std::max(peak[ix], std::fabs(avg[ix]));
  }
  return StepFunction::from_values(f.level(), std::move(peak));
}

NormValue hp_norm(const StepFunction& f, double p) {
  return lp_norm(maximal_function(f), p);
}

NormValue modulus_lp(const StepFunction& f, int n, double p) {
  if (p < 1.0) throw std::invalid_argument("modulus_lp: p must be >= 1");
  if (n < 0 || n > f.level()) throw std::invalid_argument("modulus_lp: n out of range");
  const std::size_t shifts = std::size_t(1) << (f.level() - n);
  if (p == 1.0 && f.is_exact()) {
    std::vector<DyadicRational> norms(shifts, DyadicRational(0));
    parallel_for(
        shifts,
        [&](std::size_t u) {
          Point h{std::uint32_t(u) << n, f.level()};
          norms[u] = *lp_norm(f.translate(h) - f, 1.0).exact;
        },
        8);
    DyadicRational best(0);
    for (const auto& v : norms) best = std::max(best, v);
    NormValue r;
    r.p = p;
    r.exact = best;
    r.value = best.to_double();
    return r;
  }
  std::vector<double> norms(shifts, 0.0);
  parallel_for(
      shifts,
      [&](std::size_t u) {
        Point h{std::uint32_t(u) << n, f.level()};
        norms[u] = lp_norm(f.translate(h) - f, p).value;
      },
      8);
  NormValue r;
  r.p = p;
  r.value = *std::max_element(norms.begin(), norms.end());
  return r;
}

NormValue modulus_hp(const StepFunction& f, int n, double p) {
  check_p(p);
  if (n < 0 || n > f.level()) throw std::invalid_argument("modulus_hp: n out of range");
  return hp_norm(f - partial_sum(f, std::uint64_t(1) << n), p);
}

ApproxBounds best_approx_bounds(const StepFunction& f, int n, double p) {
  if (p < 1.0) throw std::invalid_argument("best_approx_bounds: p must be >= 1");
  if (n < 0 || n > f.level()) throw std::invalid_argument("best_approx_bounds: n out of range");
  double err = lp_norm(f - partial_sum(f, std::uint64_t(1) << n), p).value;
  return ApproxBounds{err / 2.0, err};
}

}  // namespace walshkit
