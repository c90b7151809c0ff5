// Acceptance suite: one check per shipped guarantee, each printed as a
// single pass/fail line. Exit status is nonzero when any check fails.
#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "walshkit/experiments.hpp"
#include "walshkit/io.hpp"
#include "walshkit/norms.hpp"
#include "walshkit/parallel.hpp"

using namespace walshkit;

namespace {

int failures = 0;

void report(int id, const std::string& what, bool ok, double seconds,
            const std::string& detail = "") {
  std::printf("[%s] criterion %2d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", id, what.c_str(),
              seconds, detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

void run(int id, const std::string& what, double budget_seconds,
         const std::function<bool(std::string&)>& body) {
  auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& ex) {
    detail = std::string("exception: ") + ex.what();
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (ok && budget_seconds > 0 && seconds > budget_seconds) {
    ok = false;
    detail = "runtime budget " + format_double(budget_seconds) + "s exceeded";
  }
  report(id, what, ok, seconds, detail);
}

ConstructionSpec witness_spec(Theorem t, double p, int level) {
  ConstructionSpec spec;
  spec.theorem = t;
  spec.p = p;
  spec.phi = WeightFunction::one();
  spec.resolution = level;
  std::uint64_t bound = std::uint64_t(1) << level;
  spec.base = (t == Theorem::T2b || t == Theorem::T5b) ? IndexSequence::alternating_bits(bound)
                                                       : IndexSequence::pow2_plus_1(bound);
  return spec;
}

bool criterion_lebesgue(std::string& detail) {
  ExperimentReport rep = lebesgue_sweep(4096, SampleSpec{200, 20260810, 20});
  detail = "rows=" + std::to_string(rep.rows.size()) +
           " min_ratio=" + rep.summary.at("min_ratio") +
           " max_ratio=" + rep.summary.at("max_ratio");
  return rep.violations == 0 && rep.rows.size() == 4296;
}

bool criterion_kernel_paths(std::string& detail) {
  const int level = 10;
  StepFunction running = StepFunction::zeros(level, Mode::Exact);
  for (std::uint64_t n = 1; n <= 1024; ++n) {
    running = running + walsh(n - 1, level);  // direct definition, incrementally
    if (!(running == dirichlet_formula(n, level))) {
      detail = "mismatch at n=" + std::to_string(n);
      return false;
    }
  }
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    int m = 1 + int(rng() % 9);
    std::uint64_t j = 1 + rng() % (std::uint64_t(1) << m);
    StepFunction lhs = dirichlet_formula(j + (std::uint64_t(1) << m), level);
    StepFunction rhs =
        dirichlet_formula(std::uint64_t(1) << m, level) +
        multiply(walsh(std::uint64_t(1) << m, level), dirichlet_formula(j, level));
    if (!(lhs == rhs)) {
      detail = "recursion failed at j=" + std::to_string(j) + " m=" + std::to_string(m);
      return false;
    }
  }
  detail = "1024 kernels bit-exact, 100 recursion instances";
  return true;
}

bool criterion_support_measure(std::string& detail) {
  for (std::uint64_t n = 1; n <= 4096; ++n) {
    IndexExpansion e = expand(n);
    DyadicRational mu = kernel_support_measure(n);
    if (mu < DyadicRational::pow2(-e.low - 1) || mu > DyadicRational::pow2(-e.low)) {
      detail = "support bound failed at n=" + std::to_string(n);
      return false;
    }
    DyadicRational scaled = DyadicRational(static_cast<long long>(n)) * mu;
    if (scaled < DyadicRational::pow2(e.gap - 1) || scaled > DyadicRational::pow2(e.gap + 1)) {
      detail = "n*mu comparability failed at n=" + std::to_string(n);
      return false;
    }
  }
  detail = "2^-<n>-1 <= mu <= 2^-<n> and n*mu in [2^(d-1), 2^(d+1)] for n <= 4096";
  return true;
}

bool criterion_fwht(std::string& detail) {
  std::mt19937_64 rng(4);
  for (int level = 0; level <= 12; ++level) {
    StepFunction f = StepFunction::random(level, rng(), -3.0, 3.0);
    if (!(ifwht(fwht(f)) == f)) {
      detail = "exact involution failed at level " + std::to_string(level);
      return false;
    }
  }
  for (int i = 0; i < 5; ++i) {
    StepFunction f = StepFunction::random(14, rng(), -1.0, 1.0, Mode::Float);
    CoefficientVector c = fwht(f);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t ix = 0; ix < f.size(); ++ix) {
      lhs += f.value(ix) * f.value(ix);
      rhs += c.value(ix) * c.value(ix);
    }
    lhs = std::ldexp(lhs, -f.level());
    if (std::fabs(lhs - rhs) > 1e-12 * std::max(lhs, rhs)) {
      detail = "Parseval drift " + format_double(std::fabs(lhs - rhs));
      return false;
    }
  }
  for (int i = 0; i < 5; ++i) {
    StepFunction f = StepFunction::random(10, rng(), -2.0, 2.0);
    for (int m = 0; m <= 10; ++m) {
      if (!(partial_sum(f, std::uint64_t(1) << m) == f.coarsen_average(m).refine(10))) {
        detail = "S_{2^m} != E_m at m=" + std::to_string(m);
        return false;
      }
    }
  }
  detail = "involution exact to level 12, Parseval 1e-12, S_{2^m} = E_m exact";
  return true;
}

bool criterion_watari(std::string& detail) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    StepFunction f = StepFunction::random(8, seed, -1.0, 1.0);
    StepFunction ff = f.to_float();
    for (int n = 0; n <= 8; ++n) {
      DyadicRational omega = *modulus_lp(f, n, 1.0).exact;
      DyadicRational err = *lp_norm(f - partial_sum(f, std::uint64_t(1) << n), 1.0).exact;
      if (!(err <= omega && omega <= DyadicRational(2) * err)) {
        detail = "p=1 sandwich failed at seed " + std::to_string(seed);
        return false;
      }
      double omega2 = modulus_lp(ff, n, 2.0).value;
      double err2 = lp_norm(ff - partial_sum(ff, std::uint64_t(1) << n), 2.0).value;
      if (!(err2 <= omega2 * (1 + 1e-12) && omega2 <= 2 * err2 * (1 + 1e-12) + 1e-15)) {
        detail = "p=2 sandwich failed at seed " + std::to_string(seed);
        return false;
      }
    }
  }
  detail = "200 seeds, N=8, p in {1,2}, exact at p=1";
  return true;
}

bool criterion_oracles(std::string& detail) {
  struct Family {
    Theorem t;
    double p;
    bool dyadic;  // ideal constants are exactly dyadic
  };
  for (Family fam : {Family{Theorem::T1b, 0.5, true}, Family{Theorem::T2b, 1.0, false},
                     Family{Theorem::T4b, 0.5, true}, Family{Theorem::T5b, 1.0, true}}) {
    ConstructionSpec spec = witness_spec(fam.t, fam.p, 18);
    RealizedConstruction rc = build(spec);
    if (!(fwht(rc.F) == rc.oracle_coeffs)) {
      detail = theorem_to_string(fam.t) + ": transform differs from the realized law";
      return false;
    }
    for (std::uint64_t j = 0; j < rc.F.size(); ++j) {
      double ideal = coefficient_oracle(spec, rc.alphas, j);
      double realized = rc.oracle_coeffs.exact_value(std::size_t(j)).to_double();
      bool ok = fam.dyadic ? realized == ideal
                           : (ideal == 0.0 ? realized == 0.0
                                           : std::fabs(realized - ideal) <= 1e-12 * ideal);
      if (!ok) {
        detail = theorem_to_string(fam.t) + ": coefficient law failed at j=" + std::to_string(j);
        return false;
      }
    }
  }
  detail = "t1b/t2b/t4b/t5b at N=18; exact where dyadic, 1e-12 otherwise";
  return true;
}

bool criterion_t5b_floor(std::string& detail) {
  ConstructionSpec spec = witness_spec(Theorem::T5b, 1.0, 20);
  RealizedConstruction rc = build(spec);
  if (rc.alphas.size() < 3) {
    detail = "fewer than 3 realized terms";
    return false;
  }
  double min_margin = 1e300;
  for (std::size_t k = 0; k < rc.alphas.size(); ++k) {
    const IndexExpansion& e = rc.alphas[k];
    DyadicRational err = *lp_norm(rc.F - partial_sum(rc.F, e.value), 1.0).exact;
    DyadicRational floor =
        DyadicRational(1, 3) -
        DyadicRational(2) * DyadicRational::pow2(-std::countr_zero(unsigned(e.variation)));
    if (err < floor) {
      detail = "floor failed at k=" + std::to_string(k);
      return false;
    }
    min_margin = std::min(min_margin, (err - floor).to_double());
    DyadicRational omega = *modulus_hp(rc.F, e.order, 1.0).exact;
    DyadicRational tail(0);
    for (std::size_t i = k; i < rc.lambdas.size(); ++i) tail += rc.lambdas[i];
    if (omega > tail) {
      detail = "tail bound failed at k=" + std::to_string(k);
      return false;
    }
  }
  detail = "3 terms at N=20, exact floor and tail bound; min margin " +
           format_double(min_margin);
  return true;
}

bool criterion_t1b_divergence(std::string& detail) {
  ConstructionSpec spec = witness_spec(Theorem::T1b, 0.5, 20);
  ExperimentReport rep = divergence_run(spec);
  double dev = std::stod(rep.summary.at("slope_rel_dev"));
  double min_ratio = std::stod(rep.summary.at("min_ratio_from_k2"));
  if (rep.violations != 0 || dev > 0.15 || !(min_ratio > 0.0)) {
    detail = "slope_rel_dev=" + rep.summary.at("slope_rel_dev") +
             " min_ratio=" + rep.summary.at("min_ratio_from_k2");
    return false;
  }
  RealizedConstruction rc = build(spec);
  int probed = 0;
  for (std::size_t k = 0; k < rc.alphas.size(); ++k) {
    ProbeResult r = proof_probe_II(rc, k);
    if (!r.applicable) continue;  // <alpha_k> == |alpha_k|: the probe's side condition
    ++probed;
    if (!(r.exact && r.ok)) {
      detail = "probe failed at k=" + std::to_string(k) + " " + r.note;
      return false;
    }
  }
  detail = "slope dev " + rep.summary.at("slope_rel_dev") + ", min ratio " +
           rep.summary.at("min_ratio_from_k2") + ", " + std::to_string(probed) +
           " probes exact";
  return probed >= 3;
}

bool criterion_t2b_divergence(std::string& detail) {
  ConstructionSpec spec = witness_spec(Theorem::T2b, 1.0, 20);
  ExperimentReport rep = divergence_run(spec);
  if (rep.violations != 0) {
    detail = "report violations";
    return false;
  }
  // c = min over k >= 1 of M_k / sqrt(V(alpha_k)); k = 0 has an empty partial
  // block (alpha_0 = 1 gives S_1 F = 0), so the lower-bound regime starts at 1.
  double c = 1e300;
  bool increasing = true;
  double prev = -1.0;
  for (std::size_t k = 1; k < rep.rows.size(); ++k) {
    double m = std::stod(rep.rows[k][4]);
    double ratio = std::stod(rep.rows[k][6]);
    c = std::min(c, ratio);
    if (k >= 2 && m <= prev) increasing = false;
    prev = m;
  }
  detail = "recorded c=" + format_double(c) +
           " over k>=1, rows=" + std::to_string(rep.rows.size());
  return c > 0.0 && increasing && rep.rows.size() >= 3;
}

bool criterion_boundedness(std::string& detail) {
  ExperimentReport atoms = boundedness_sweep(0.5, 1024, 100, 20260810, 11);
  ExperimentReport funcs = boundedness_sweep(1.0, 1024, 100, 20260811, 11);
  detail = "p=1/2 sup=" + atoms.summary.at("sup_ratio") +
           " p=1 sup=" + funcs.summary.at("sup_ratio");
  return atoms.violations == 0 && funcs.violations == 0;
}

bool criterion_contrast(std::string& detail) {
  IndexSequence seq = IndexSequence::pow2_plus_half(std::uint64_t(1) << 18);
  ExperimentReport conv = convergence_run(seq, 1.0, 18, 20260812);
  if (conv.violations != 0 || conv.summary.at("decay_ok") != "true") {
    detail = "bounded-gap decay failed";
    return false;
  }
  ExperimentReport floor_run = convergence_run(witness_spec(Theorem::T4b, 0.5, 18));
  if (floor_run.violations != 0) {
    detail = "t4b floor violated";
    return false;
  }
  detail = "decay " + conv.summary.at("first_error") + " -> " + conv.summary.at("last_error") +
           "; t4b min weak error " + floor_run.summary.at("min_error_weak");
  return true;
}

}  // namespace

int main() {
  run(1, "exact two-sided Lebesgue bound V/8 <= L_S <= V", 60.0, criterion_lebesgue);
  run(2, "kernel path equivalence and recursion", 30.0, criterion_kernel_paths);
  run(3, "kernel support-measure comparability", 0.0, criterion_support_measure);
  run(4, "FWHT involution, Parseval, S_{2^m} = E_m", 0.0, criterion_fwht);
  run(5, "Watari sandwich", 0.0, criterion_watari);
  run(6, "coefficient oracles for the four constructions", 0.0, criterion_oracles);
  run(7, "t5b: exact 1/8 - 2/V error floor and tail bound", 0.0, criterion_t5b_floor);
  run(8, "t1b divergence shape and partial-block probe", 0.0, criterion_t1b_divergence);
  run(9, "t2b divergence with recorded constant", 0.0, criterion_t2b_divergence);
  run(10, "partial-sum boundedness: no growth trend", 0.0, criterion_boundedness);
  run(11, "convergence/divergence contrast at desk scale", 120.0, criterion_contrast);
  if (failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria failed\n", failures);
  return 1;
}
