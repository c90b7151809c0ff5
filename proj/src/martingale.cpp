#include "walshkit/martingale.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace walshkit {

namespace {

constexpr int kCoeffBits = 44;

bool nearly_integer(double x) { return std::fabs(x - std::round(x)) < 1e-9; }

// D_{2^(m+1)} - D_{2^m} at the given level: +2^m on I_{m+1}, -2^m on
// I_m \ I_{m+1}, 0 elsewhere.
StepFunction kernel_difference(int m, int level) {
  if (m + 1 > level) throw std::invalid_argument("kernel_difference: level too small");
  std::vector<Int128> nums(std::size_t(1) << level, 0);
  const Int128 height = Int128(1) << m;
  for (std::size_t ix = 0; ix < nums.size(); ++ix) {
    int depth = interval_depth(std::uint32_t(ix), level);
    if (depth > m)
      nums[ix] = height;
    else if (depth == m)
      nums[ix] = -height;
  }
  return StepFunction::from_exact(level, std::move(nums), 0);
}

double ideal_lambda(const ConstructionSpec& spec, const IndexExpansion& e) {
  switch (spec.theorem) {
    case Theorem::T1b:
      return std::sqrt(spec.phi(e.value)) /
             std::exp2(double(e.gap) * (1.0 / spec.p - 1.0) / 2.0);
    case Theorem::T2b:
      return std::sqrt(spec.phi(e.value) / double(e.variation));
    case Theorem::T4b:
      return std::exp2(-(1.0 / spec.p - 1.0) * double(e.gap));
    case Theorem::T5b:
      return 1.0 / double(e.variation);
  }
  return 0.0;
}

double ideal_atom_scale(const ConstructionSpec& spec, const IndexExpansion& e) {
  switch (spec.theorem) {
    case Theorem::T1b:
    case Theorem::T4b:
      return std::exp2(double(e.order) * (1.0 / spec.p - 1.0));
    case Theorem::T2b:
    case Theorem::T5b:
      return 1.0;
  }
  return 1.0;
}

IndexSequence select_alphas(const ConstructionSpec& spec, const IndexSequence& admissible) {
  switch (spec.theorem) {
    case Theorem::T1b:
    case Theorem::T2b:
      return select_summable(admissible, spec.p, spec.phi, spec.budget, spec.max_terms);
    case Theorem::T4b:
      return select_gap_doubling(admissible, spec.p, spec.max_terms);
    case Theorem::T5b:
      return select_variation_squaring(admissible, spec.max_terms);
  }
  return admissible;
}

}  // namespace

Theorem theorem_from_string(const std::string& s) {
  if (s == "t1b") return Theorem::T1b;
  if (s == "t2b") return Theorem::T2b;
  if (s == "t4b") return Theorem::T4b;
  if (s == "t5b") return Theorem::T5b;
  throw std::invalid_argument("unknown theorem: " + s);
}

std::string theorem_to_string(Theorem t) {
  switch (t) {
    case Theorem::T1b:
      return "t1b";
    case Theorem::T2b:
      return "t2b";
    case Theorem::T4b:
      return "t4b";
    case Theorem::T5b:
      return "t5b";
  }
  return "?";
}

DyadicRational dyadic_round(double x) {
  if (x == 0.0) return DyadicRational(0);
  if (!std::isfinite(x)) throw std::invalid_argument("dyadic_round: non-finite value");
  int e = 0;
  double m = std::frexp(x, &e);  // x = m * 2^e, |m| in [0.5, 1)
  auto num = Int128(std::llround(std::ldexp(m, kCoeffBits)));
  int exp = kCoeffBits - e;
  if (exp < 0) {
    if (-exp > 60) throw std::invalid_argument("dyadic_round: value too large");
    return DyadicRational(num << -exp, 0);
  }
  return DyadicRational(num, exp);
}

AtomCheckResult atom_check(const Atom& a) {
  const StepFunction& f = a.f;
  if (a.support.rank > f.level()) return {false, "support rank exceeds resolution"};
  for (std::size_t ix = 0; ix < f.size(); ++ix) {
    if (!a.support.contains(std::uint32_t(ix)) && f.value(ix) != 0.0)
      return {false, "nonzero value off the support interval"};
  }
  if (f.is_exact()) {
    if (!f.integrate_exact().is_zero()) return {false, "integral over support is nonzero"};
  } else {
    double scale = 0.0;
    for (std::size_t ix = 0; ix < f.size(); ++ix)
      scale = std::max(scale, std::fabs(f.value(ix)));
    if (std::fabs(f.integrate()) > 1e-12 * std::max(scale, 1.0))
      return {false, "integral over support is nonzero"};
  }
  const double bound = std::exp2(double(a.support.rank) / a.p);
  for (std::size_t ix = 0; ix < f.size(); ++ix) {
    if (std::fabs(f.value(ix)) > bound * (1.0 + 1e-9))
      return {false, "sup norm exceeds mu(I)^(-1/p)"};
  }
  return {};
}

Atom random_p_atom(double p, int M, int N, std::uint64_t seed) {
  if (!(p > 0.0)) throw std::invalid_argument("random_p_atom: p must be positive");
  if (M < 0 || M >= N) throw std::invalid_argument("random_p_atom: need 0 <= M < N");
  if (N > kMaxLevel) throw std::invalid_argument("random_p_atom: level too large");
  std::mt19937_64 rng(seed);
  const std::size_t cells = std::size_t(1) << (N - M);
  const std::size_t pairs = cells / 2;
  const std::size_t full_pair = pairs > 1 ? rng() % pairs : 0;
  constexpr int kFracBits = 12;
  // Sibling cells carry opposite values c_t and -c_t, so the mean vanishes
  // pair by pair; one pair is pinned to the full height so the sup norm
  // mu(I_M)^{-1/p} is attained.
  std::vector<Int128> quanta(pairs);
  for (std::size_t t = 0; t < pairs; ++t) {
    std::uint64_t r = rng();
    long long mag = (long long)(r % ((1u << kFracBits) + 1));
    quanta[t] = (r >> 32) & 1 ? -Int128(mag) : Int128(mag);
  }
  quanta[full_pair] = (rng() & 1) ? -(Int128(1) << kFracBits) : (Int128(1) << kFracBits);

  const double height_exp = double(M) / p;
  Atom atom;
  atom.support = DyadicInterval{M, 0};
  atom.p = p;
  if (nearly_integer(height_exp)) {
    int he = int(std::llround(height_exp));
    std::vector<Int128> nums(std::size_t(1) << N, 0);
    for (std::size_t u = 0; u < cells; ++u) {
      Int128 c = quanta[u / 2];
      if (u & 1) c = -c;
      nums[u << M] = (c << he);
    }
    atom.f = StepFunction::from_exact(N, std::move(nums), kFracBits);
  } else {
    const double height = std::exp2(height_exp);
    std::vector<double> vals(std::size_t(1) << N, 0.0);
    for (std::size_t u = 0; u < cells; ++u) {
      double c = std::ldexp(double(quanta[u / 2]), -kFracBits) * height;
      vals[u << M] = (u & 1) ? -c : c;
    }
    atom.f = StepFunction::from_values(N, std::move(vals));
  }
  return atom;
}

double coefficient_oracle(const ConstructionSpec& spec,
                          const std::vector<IndexExpansion>& alphas, std::uint64_t j) {
  for (const auto& e : alphas) {
    std::uint64_t lo = std::uint64_t(1) << e.order;
    if (j >= lo && j < 2 * lo) return ideal_lambda(spec, e) * ideal_atom_scale(spec, e);
    if (j < lo) break;
  }
  return 0.0;
}

RealizedConstruction build(const ConstructionSpec& spec) {
  const bool wants_p1 = spec.theorem == Theorem::T2b || spec.theorem == Theorem::T5b;
  if (wants_p1 && spec.p != 1.0)
    throw std::invalid_argument("build: this construction requires p = 1");
  if (!wants_p1 && !(spec.p > 0.0 && spec.p < 1.0))
    throw std::invalid_argument("build: this construction requires 0 < p < 1");
  const int N = spec.resolution;
  if (N < 1 || N > kMaxLevel) throw std::invalid_argument("build: bad resolution");

  // Only indices whose Fourier block fits below the resolution are admissible.
  IndexSequence admissible;
  admissible.kind = spec.base.kind;
  const std::uint64_t bound = std::uint64_t(1) << N;
  for (std::uint64_t m : spec.base.values)
    if (m < bound) admissible.values.push_back(m);

  IndexSequence selected = select_alphas(spec, admissible);
  if (selected.values.size() < 3)
    throw std::invalid_argument("build: selection produced fewer than 3 terms within resolution " +
                                std::to_string(N));

  RealizedConstruction rc;
  rc.spec = spec;
  for (std::uint64_t a : selected.values) rc.alphas.push_back(expand(a));

  std::vector<DyadicRational> shell(std::size_t(N) + 1, DyadicRational(0));
  for (const auto& e : rc.alphas) {
    double lam = ideal_lambda(spec, e);
    double scale = ideal_atom_scale(spec, e);
    DyadicRational lam_q = dyadic_round(lam);
    DyadicRational coeff = lam_q * dyadic_round(scale);
    if (lam > 0.0 && lam_q.is_zero())
      throw std::invalid_argument("build: coefficient below exact precision");
    rc.lambdas_ideal.push_back(lam);
    rc.lambdas.push_back(lam_q);
    rc.block_coeffs.push_back(coeff);
    rc.lambda_power_sum += std::pow(lam, spec.p);

    Atom atom;
    atom.support = DyadicInterval{e.order, 0};
    atom.p = spec.p;
    atom.f = kernel_difference(e.order, N).scaled(dyadic_round(scale));
    rc.atoms.push_back(std::move(atom));

    // F is constant on the shells I_s \ I_{s+1}; accumulate per shell.
    DyadicRational height = coeff * DyadicRational::pow2(e.order);
    for (int s = e.order + 1; s <= N; ++s) shell[std::size_t(s)] += height;
    shell[std::size_t(e.order)] -= height;
  }

  int max_exp = 0;
  for (const auto& v : shell) max_exp = std::max(max_exp, v.exp());
  std::vector<Int128> nums(std::size_t(1) << N);
  for (std::size_t ix = 0; ix < nums.size(); ++ix) {
    const DyadicRational& v = shell[std::size_t(interval_depth(std::uint32_t(ix), N))];
    nums[ix] = v.num() << (max_exp - v.exp());
  }
  rc.F = StepFunction::from_exact(N, std::move(nums), max_exp);

  // Realized coefficient law, assembled from the closed-form block constants
  // and never from a transform.
  int coeff_exp = 0;
  for (const auto& c : rc.block_coeffs) coeff_exp = std::max(coeff_exp, c.exp());
  std::vector<Int128> cnums(std::size_t(1) << N, 0);
  for (std::size_t k = 0; k < rc.alphas.size(); ++k) {
    const auto& e = rc.alphas[k];
    Int128 v = rc.block_coeffs[k].num() << (coeff_exp - rc.block_coeffs[k].exp());
    for (std::uint64_t j = std::uint64_t(1) << e.order; j < (std::uint64_t(2) << e.order); ++j)
      cnums[j] = v;
  }
  rc.oracle_coeffs =
      CoefficientVector(StepFunction::from_exact(N, std::move(cnums), coeff_exp));
  return rc;
}

ProbeResult proof_probe_II(const RealizedConstruction& rc, std::size_t k) {
  if (rc.spec.theorem != Theorem::T1b)
    throw std::invalid_argument("proof_probe_II: only defined for the t1b construction");
  if (k >= rc.alphas.size()) throw std::invalid_argument("proof_probe_II: term index out of range");
  const IndexExpansion& e = rc.alphas[k];
  ProbeResult r;
  if (e.low == e.order) {
    r.note = "skipped: <alpha_k> == |alpha_k|";
    return r;
  }
  r.applicable = true;
  const int N = rc.F.level();
  const double p = rc.spec.p;
  const double phi = rc.spec.phi(e.value);
  r.predicted = std::exp2(double(e.order) * (1.0 / p - 1.0) / 2.0 +
                          double(e.low) * (1.0 / p + 1.0) / 2.0) /
                std::sqrt(phi);

  // II * Phi(alpha_k) = coeff_k * w_{2^|alpha|} * D_{alpha - 2^|alpha|}.
  std::uint64_t rest = e.value - (std::uint64_t(1) << e.order);
  StepFunction tail = multiply(walsh(std::uint64_t(1) << e.order, N),
                               dirichlet_formula(rest, N))
                          .scaled(rc.block_coeffs[k]);

  if (rc.spec.phi.is_one()) {
    // Realized prediction: |w D| = 2^<alpha> on the shell, scaled by coeff_k.
    DyadicRational predicted = (rc.block_coeffs[k] * DyadicRational::pow2(e.low)).abs();
    r.measured = predicted.to_double();
    r.exact = true;
    r.ok = true;
    for (std::size_t ix = 0; ix < tail.size(); ++ix) {
      if (interval_depth(std::uint32_t(ix), N) != e.low) continue;
      if (tail.exact_value(ix).abs() != predicted) {
        r.ok = false;
        r.measured = tail.value(ix);
        r.note = "shell value differs from prediction";
        break;
      }
    }
    double rel = std::fabs(predicted.to_double() - r.predicted) /
                 std::max(r.predicted, 1e-300);
    r.max_rel_err = rel;
    if (rel > 1e-12) {
      r.ok = false;
      r.note = "realized constant drifted from the closed form";
    }
    return r;
  }

  r.ok = true;
  for (std::size_t ix = 0; ix < tail.size(); ++ix) {
    if (interval_depth(std::uint32_t(ix), N) != e.low) continue;
    double measured = std::fabs(tail.value(ix)) / phi;
    r.measured = measured;
    double rel = std::fabs(measured - r.predicted) / std::max(r.predicted, 1e-300);
    r.max_rel_err = std::max(r.max_rel_err, rel);
    if (rel > 1e-12) {
      r.ok = false;
      r.note = "shell value differs from prediction";
    }
  }
  return r;
}

}  // namespace walshkit
