#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "walshkit/index.hpp"

using namespace walshkit;

TEST_CASE("expand on frozen values") {
  auto check = [](std::uint64_t n, int order, int low, int gap, int variation) {
    IndexExpansion e = expand(n);
    CAPTURE(n);
    CHECK(e.order == order);
    CHECK(e.low == low);
    CHECK(e.gap == gap);
    CHECK(e.variation == variation);
  };
  check(1, 0, 0, 0, 2);
  check(2, 1, 1, 0, 2);
  check(3, 1, 0, 1, 2);
  check(5, 2, 0, 2, 4);
  check(6, 2, 1, 1, 2);
  check(1025, 10, 0, 10, 4);           // 2^10 + 1
  check((1 << 5) + (1 << 4), 5, 4, 1, 2);  // 2^k + 2^{k-1}
  for (int k = 1; k < 20; ++k) {
    IndexExpansion e = expand((std::uint64_t(1) << k) + 1);
    CHECK(e.order == k);
    CHECK(e.low == 0);
    CHECK(e.gap == k);
  }
  CHECK_THROWS_AS(expand(0), std::invalid_argument);
}

TEST_CASE("expand invariants over a sweep") {
  for (std::uint64_t n = 1; n < (std::uint64_t(1) << 20); ++n) {
    IndexExpansion e = expand(n);
    // 2^order <= n < 2^(order+1)
    if ((n & (n - 1)) == 0) {
      REQUIRE(e.variation == 2);
    }
    REQUIRE(e.gap >= 0);
    REQUIRE(e.variation >= 2);
    REQUIRE(e.variation <= e.gap + 2);
    REQUIRE(e.variation % 2 == 0);
  }
}

TEST_CASE("bits reconstruct the index") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    std::uint64_t n = (rng() >> (rng() % 63)) | 1;
    IndexExpansion e = expand(n);
    REQUIRE((std::uint64_t(1) << e.order) <= n);
    std::uint64_t rebuilt = 0;
    for (std::size_t j = 0; j < e.bits.size(); ++j)
      rebuilt |= std::uint64_t(e.bits[j]) << j;
    REQUIRE(rebuilt == n);
    REQUIRE(e.bits[std::size_t(e.low)] == 1);
    REQUIRE(e.bits[std::size_t(e.order)] == 1);
  }
}

TEST_CASE("built-in families") {
  auto p1 = IndexSequence::pow2_plus_1(40);
  CHECK(p1.values == std::vector<std::uint64_t>{2, 3, 5, 9, 17, 33});
  auto ph = IndexSequence::pow2_plus_half(100);
  CHECK(ph.values == std::vector<std::uint64_t>{3, 6, 12, 24, 48, 96});
  auto ab = IndexSequence::alternating_bits(100000);
  CHECK(ab.values == std::vector<std::uint64_t>{1, 5, 21, 85, 341, 1365, 5461, 21845, 87381});
  // V grows by 2 per added one-bit.
  for (std::size_t k = 0; k < ab.values.size(); ++k)
    CHECK(expand(ab.values[k]).variation == 2 * int(k + 1));
  CHECK_THROWS(IndexSequence::explicit_list({3, 3}));
  CHECK_THROWS(IndexSequence::explicit_list({0}));
}

TEST_CASE("select_gap_doubling") {
  auto sel = select_gap_doubling(IndexSequence::pow2_plus_1(std::uint64_t(1) << 20), 0.5);
  CHECK(sel.values == std::vector<std::uint64_t>{3, 5, 17, 257, 65537});
  int prev = 0;
  for (std::uint64_t a : sel.values) {
    IndexExpansion e = expand(a);
    if (prev > 0) CHECK(e.gap >= 2 * prev);
    CHECK(e.gap > prev);
    prev = e.gap;
  }

  // d-values 1, 3, 5, 12, 25: picks 1, 3, 12 (>= 6), 25 (>= 24).
  auto list = IndexSequence::explicit_list(
      {3, 9, 33, (std::uint64_t(1) << 12) + 1, (std::uint64_t(1) << 25) + 1});
  auto picked = select_gap_doubling(list, 0.5);
  CHECK(picked.values ==
        std::vector<std::uint64_t>{3, 9, (std::uint64_t(1) << 12) + 1,
                                   (std::uint64_t(1) << 25) + 1});

  // Constant gap stalls after one term.
  auto stalled = select_gap_doubling(IndexSequence::pow2_plus_half(1 << 16), 0.5);
  CHECK(stalled.values.size() == 1);
}

TEST_CASE("select_variation_squaring") {
  auto sel = select_variation_squaring(IndexSequence::alternating_bits(std::uint64_t(1) << 20));
  CHECK(sel.values == std::vector<std::uint64_t>{1, 5, 21845});
  CHECK(expand(sel.values[1]).variation >= 4);
  CHECK(expand(sel.values[2]).variation >= 16);

  // V-values 2, 4, 16, 18: the squaring rule takes 2, 4, 16 and stops.
  auto list = IndexSequence::explicit_list({1, 5, 21845, 87381});
  CHECK(select_variation_squaring(list).values == std::vector<std::uint64_t>{1, 5, 21845});

  // Constant V = 2 on powers of two: a single term.
  auto powers = IndexSequence::explicit_list({2, 4, 8, 16, 32});
  CHECK(select_variation_squaring(powers).values.size() == 1);
}

TEST_CASE("select_summable") {
  auto base = IndexSequence::pow2_plus_1(std::uint64_t(1) << 20);
  auto sel = select_summable(base, 0.5, WeightFunction::one(), 1.0);
  CHECK(sel.values == std::vector<std::uint64_t>{2, 17, 257, 4097, 65537});
  // Direct summation of the series terms against the budget.
  double sum = 0.0;
  for (std::size_t k = 0; k < sel.values.size(); ++k) {
    IndexExpansion e = expand(sel.values[k]);
    double term = std::exp2(-double(e.gap) / 4.0);  // p = 1/2, Phi = 1
    CHECK(term <= std::exp2(-double(k)));
    sum += term;
  }
  CHECK(sum <= 2.0);

  // Constant-gap input decays nowhere: selection dies after the first term.
  auto flat = select_summable(IndexSequence::pow2_plus_half(1 << 18), 0.5,
                              WeightFunction::one(), 1.0);
  CHECK(flat.values.size() == 1);

  // p = 1 uses the Phi/V law.
  auto p1 = select_summable(IndexSequence::alternating_bits(std::uint64_t(1) << 16), 1.0,
                            WeightFunction::one(), 1.0);
  CHECK(p1.values == std::vector<std::uint64_t>{1, 5, 21845});
  double s = 0.0;
  for (std::size_t k = 0; k < p1.values.size(); ++k) {
    double term = 1.0 / std::sqrt(double(expand(p1.values[k]).variation));
    CHECK(term <= std::exp2(-double(k)));
    s += term;
  }
  CHECK(s <= 2.0);
}

TEST_CASE("weight functions") {
  CHECK(WeightFunction::one()(123) == 1.0);
  CHECK(WeightFunction::log2_weight()(1) == 1.0);
  CHECK(WeightFunction::log2_weight()(8) == doctest::Approx(4.0));
  CHECK(WeightFunction::power(0.25)(16) == doctest::Approx(2.0));
  CHECK_THROWS(WeightFunction::power(0.5));
  auto t = WeightFunction::table({{4, 2.0}, {16, 3.0}});
  CHECK(t(1) == 1.0);
  CHECK(t(5) == 2.0);
  CHECK(t(100) == 3.0);
  CHECK_THROWS(WeightFunction::table({{4, 2.0}, {3, 3.0}}));
  CHECK(WeightFunction::parse("pow:0.25")(16) == doctest::Approx(2.0));
}
