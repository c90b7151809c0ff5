// p-atoms and the four counterexample martingale constructions, realized as
// finite step functions at a truncation resolution together with closed-form
// coefficient oracles.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "walshkit/group.hpp"
#include "walshkit/index.hpp"
#include "walshkit/transform.hpp"

namespace walshkit {

enum class Theorem { T1b, T2b, T4b, T5b };

Theorem theorem_from_string(const std::string& s);
std::string theorem_to_string(Theorem t);

struct ConstructionSpec {
  Theorem theorem = Theorem::T1b;
  double p = 0.5;           // T2b/T5b require p == 1
  WeightFunction phi;       // identity for T4b/T5b
  IndexSequence base;       // candidate indices {m_k}
  int resolution = 16;      // N; every selected alpha has |alpha| + 1 <= N
  std::size_t max_terms = SIZE_MAX;
  double budget = 1.0;      // summable-selector budget (T1b/T2b)
};

struct Atom {
  DyadicInterval support;
  StepFunction f;
  double p = 1.0;
};

struct AtomCheckResult {
  bool ok = true;
  std::string detail;  // first violated condition, empty when ok
};

AtomCheckResult atom_check(const Atom& a);

// Zero-mean function on I_M (prefix 0) with sup norm 2^(M/p) attained,
// deterministic per seed; exact mode whenever M/p is an integer.
Atom random_p_atom(double p, int M, int N, std::uint64_t seed);

struct RealizedConstruction {
  ConstructionSpec spec;
  std::vector<IndexExpansion> alphas;
  // Closed-form coefficient constants. Realized values are dyadic rationals
  // rounded to 44 significand bits (identical to the ideal value whenever it
  // is itself dyadic), so the construction lives in exact arithmetic and its
  // transform matches the oracle bit-for-bit.
  std::vector<double> lambdas_ideal;
  std::vector<DyadicRational> lambdas;
  std::vector<DyadicRational> block_coeffs;  // lambda_k * atom scale
  std::vector<Atom> atoms;
  StepFunction F;                   // truncated martingale, exact mode
  CoefficientVector oracle_coeffs;  // realized block law, independent of fwht
  double lambda_power_sum = 0.0;    // sum |lambda_k|^p of the ideal weights
};

RealizedConstruction build(const ConstructionSpec& spec);

// Ideal closed-form coefficient value at frequency j (0 off the blocks).
double coefficient_oracle(const ConstructionSpec& spec,
                          const std::vector<IndexExpansion>& alphas, std::uint64_t j);

// Evaluates the partial-block tail term II of the t1b lower-bound argument on the shell I_<alpha_k> \ I_<alpha_k>+1 and compares its constant
// modulus with the predicted value.
struct ProbeResult {
  bool applicable = false;  // false when <alpha_k> == |alpha_k| (side condition)
  double predicted = 0.0;
  double measured = 0.0;   // the realized constant modulus on the shell
  bool exact = false;      // comparison ran in exact arithmetic
  bool ok = false;         // every shell point matched
  double max_rel_err = 0.0;
  std::string note;
};

ProbeResult proof_probe_II(const RealizedConstruction& rc, std::size_t k);

// Nearest dyadic rational with 44 significand bits (exact for any double
// whose mantissa already fits).
DyadicRational dyadic_round(double x);

}  // namespace walshkit
