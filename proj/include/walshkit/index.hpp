// Binary-expansion functionals of Walsh indices and the index-sequence
// machinery feeding the counterexample constructions.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace walshkit {

// A positive integer together with the quantities read off its binary digits:
//   order     = position of the highest set bit
//   low       = position of the lowest set bit
//   gap       = order - low
//   variation = bits[0] + sum over k >= 1 of |bits[k] - bits[k-1]|,
//               taken over the zero-padded digit string (so the final 1 -> 0
//               drop counts; variation is always even and >= 2).
struct IndexExpansion {
  std::uint64_t value = 0;
  std::vector<std::uint8_t> bits;  // LSB first, size order + 1
  int order = 0;
  int low = 0;
  int gap = 0;
  int variation = 0;
};

IndexExpansion expand(std::uint64_t n);  // throws on n == 0

// Weight functions Phi: N+ -> [1, inf), nondecreasing.
class WeightFunction {
 public:
  static WeightFunction one();
  static WeightFunction log2_weight();                 // Phi(n) = 1 + log2(n)
  static WeightFunction power(double gamma);           // Phi(n) = n^gamma, 0 <= gamma <= 1/4
  // Step table (n_i, value_i); evaluates to the value at the largest n_i <= n
  // (1 below the first entry). Must be nondecreasing with values >= 1.
  static WeightFunction table(std::vector<std::pair<std::uint64_t, double>> entries);
  // "one", "log2" or "pow:<gamma>"
  static WeightFunction parse(const std::string& text);

  double operator()(std::uint64_t n) const;
  bool is_one() const { return kind_ == Kind::One; }
  std::string describe() const;

 private:
  enum class Kind { One, Log2, Power, Table };
  Kind kind_ = Kind::One;
  double gamma_ = 0.0;
  std::vector<std::pair<std::uint64_t, double>> table_;
};

struct IndexSequence {
  enum class Kind { ExplicitList, Pow2Plus1, Pow2PlusHalf, AlternatingBits };

  Kind kind = Kind::ExplicitList;
  std::vector<std::uint64_t> values;  // strictly increasing

  // Built-in families, listing every member < bound:
  //   pow2_plus_1:      2^k + 1           (k >= 0)
  //   pow2_plus_half:   2^k + 2^(k-1)     (k >= 1)
  //   alternating_bits: 10...01 in binary with k ones, i.e. (4^k - 1) / 3
  static IndexSequence pow2_plus_1(std::uint64_t bound);
  static IndexSequence pow2_plus_half(std::uint64_t bound);
  static IndexSequence alternating_bits(std::uint64_t bound);
  static IndexSequence explicit_list(std::vector<std::uint64_t> values);
  // "pow2plus1", "pow2plushalf", "altbits" or "list:a,b,c"
  static IndexSequence parse(const std::string& text, std::uint64_t bound);

  std::string describe() const;
};

// Greedy subsequence selectors. All take the earliest admissible element and
// additionally keep the orders |alpha_k| strictly increasing so the Fourier
// blocks [2^|alpha_k|, 2^(|alpha_k|+1)) of the built martingales stay
// disjoint. Results may be shorter than max_terms when the input runs out.
//
// select_summable: the k-th selected series term is <= budget * 2^-k, where
// the term is Phi(m)^(p/2) / 2^(d(m)(1-p)/2) for p < 1 and
// sqrt(Phi(m) / V(m)) for p = 1; the selected series then sums to
// <= 2 * budget.
IndexSequence select_summable(const IndexSequence& ms, double p, const WeightFunction& phi,
                              double budget, std::size_t max_terms = SIZE_MAX);

// select_gap_doubling: first element with d >= 1, then d(alpha_{k+1}) >= 2 d(alpha_k).
IndexSequence select_gap_doubling(const IndexSequence& ms, double p,
                                  std::size_t max_terms = SIZE_MAX);

// select_variation_squaring: V(alpha_{k+1}) >= V(alpha_k)^2.
IndexSequence select_variation_squaring(const IndexSequence& ms,
                                        std::size_t max_terms = SIZE_MAX);

}  // namespace walshkit
