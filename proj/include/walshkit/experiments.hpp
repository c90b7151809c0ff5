// Experiment orchestration: Lebesgue-constant sweeps, partial-sum boundedness
// ratio sweeps, divergence runs for the counterexample constructions and
// convergence runs, all emitting deterministic CSV/JSON reports.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "walshkit/index.hpp"
#include "walshkit/martingale.hpp"

namespace walshkit {

struct ExperimentReport {
  std::string id;
  nlohmann::json config;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // pre-rendered, byte-reproducible
  std::map<std::string, std::string> summary;
  int violations = 0;  // number of checked bounds that failed

  std::string to_csv() const;
  nlohmann::json to_json() const;
};

struct SampleSpec {
  std::size_t count = 0;
  std::uint64_t seed = 0;
  int max_exponent = 20;  // sampled indices are < 2^max_exponent
};

// Rows (n, functionals, L_S(n), L_S/V); asserts V(n)/8 <= L_S(n) <= V(n)
// exactly for every row. Exhaustive over [1, max_n], optionally plus sampled
// indices above.
ExperimentReport lebesgue_sweep(std::uint64_t max_n,
                                std::optional<SampleSpec> sample = std::nullopt);

// Normalized ratios ||S_n F||_{H_p} / (B(n) ||F||_{H_p}) over random p-atoms
// (p < 1) or random step functions (p = 1), with B(n) = 2^{d(n)(1/p-1)} or
// V(n). Asserts the no-growth property: every dyadic-block maximum stays
// within twice the first-half maximum.
ExperimentReport boundedness_sweep(double p, std::uint64_t max_n, int trials,
                                   std::uint64_t seed, int level = 11);

// Divergence runs for T1b/T2b (growth of the normalized partial sums against
// the predicted shape) and T5b (the exact 1/8 - 2/V error floor and the
// tail-weight bound).
ExperimentReport divergence_run(const ConstructionSpec& spec);

// Partial-sum errors along a sequence for a seeded random martingale whose
// block coefficients decay geometrically (rate 2^-beta per block), against
// the shape B(n) * omega_{H_p}(2^-k, F).
ExperimentReport convergence_run(const IndexSequence& seq, double p, int level,
                                 std::uint64_t seed, double decay_beta = 1.0);

// Convergence run on a T4b construction along its own alphas: weak-norm
// errors against the floor 2^{-1/p} - 2 / 2^{(1/p-1)d(alpha_k)}.
ExperimentReport convergence_run(const ConstructionSpec& spec);

// Least-squares slope of log2(y) against x.
double fit_log2_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace walshkit
