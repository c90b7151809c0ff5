#include <doctest.h>

#include <cmath>
#include <random>

#include "walshkit/norms.hpp"

using namespace walshkit;

TEST_CASE("lp norms") {
  for (int n = 0; n <= 6; ++n)
    CHECK(*lp_norm(dirichlet_formula(std::uint64_t(1) << n, 8), 1.0).exact == DyadicRational(1));
  CHECK(*lp_norm(dirichlet_formula(3, 2), 1.0).exact == DyadicRational(3, 1));
  for (double p : {0.5, 1.0, 2.0, 3.0})
    CHECK(lp_norm(walsh(11, 5), p).value == doctest::Approx(1.0));
  CHECK_THROWS(lp_norm(walsh(1, 2), 0.0));
}

TEST_CASE("weak lp norms") {
  // D_4: single level set of height 4 and measure 1/4.
  StepFunction d4 = dirichlet_formula(4, 4);
  CHECK(weak_lp_sup(d4, 0.5).value == doctest::Approx(0.5));
  CHECK(weak_lp_norm(d4, 0.5).value == doctest::Approx(0.25));
  for (int n = 1; n <= 6; ++n) {
    for (double p : {0.5, 1.0, 2.0}) {
      double expected = std::exp2(double(n) * (1.0 - 1.0 / p));
      CHECK(weak_lp_norm(dirichlet_formula(std::uint64_t(1) << n, 7), p).value ==
            doctest::Approx(expected));
    }
  }
  CHECK(*weak_lp_norm(d4, 1.0).exact == DyadicRational(1));

  // Chebyshev: weak <= strong, exact at p = 1.
  std::mt19937_64 rng(31);
  for (int i = 0; i < 40; ++i) {
    StepFunction f = StepFunction::random(6, rng(), -3.0, 3.0);
    CHECK(*weak_lp_norm(f, 1.0).exact <= *lp_norm(f, 1.0).exact);
    for (double p : {0.5, 2.0})
      CHECK(weak_lp_norm(f, p).value <= lp_norm(f, p).value * (1.0 + 1e-12));
  }
}

TEST_CASE("maximal function") {
  // Walsh functions have maximal function 1: S_{2^m} w_k is w_k or 0.
  for (std::uint64_t k : {0ull, 1ull, 7ull, 19ull})
    CHECK(maximal_function(walsh(k, 5)) == StepFunction::constant(5, DyadicRational(1)));
  CHECK(maximal_function(StepFunction::constant(4, DyadicRational(-3))) ==
        StepFunction::constant(4, DyadicRational(3)));

  std::mt19937_64 rng(32);
  for (int i = 0; i < 20; ++i) {
    StepFunction f = StepFunction::random(6, rng(), -2.0, 2.0);
    StepFunction star = maximal_function(f);
    for (std::size_t ix = 0; ix < f.size(); ++ix)
      REQUIRE(star.exact_value(ix) >= f.exact_value(ix).abs());
  }

  // Against brute-force enumeration of all interval averages.
  StepFunction f = StepFunction::random(5, 77, -2.0, 2.0);
  StepFunction star = maximal_function(f);
  for (std::size_t ix = 0; ix < f.size(); ++ix) {
    DyadicRational best(0);
    for (int n = 0; n <= 5; ++n) {
      DyadicRational sum(0);
      std::size_t cls = ix & ((std::size_t(1) << n) - 1);
      for (std::size_t t = 0; t < (std::size_t(1) << (5 - n)); ++t)
        sum += f.exact_value(cls + (t << n));
      sum *= DyadicRational::pow2(-(5 - n));
      best = std::max(best, sum.abs());
    }
    REQUIRE(star.exact_value(ix) == best);
  }
}

TEST_CASE("hp norm") {
  for (double p : {0.5, 1.0})
    CHECK(hp_norm(walsh(9, 5), p).value == doctest::Approx(1.0));
  std::mt19937_64 rng(33);
  for (int i = 0; i < 20; ++i) {
    StepFunction f = StepFunction::random(6, rng(), -2.0, 2.0);
    CHECK(*hp_norm(f, 1.0).exact >= *lp_norm(f, 1.0).exact);
  }
  // ||(1_{I_s})*||_1 = (2+s)/2^{s+1}: the mass seen through coarse averages.
  for (int s = 0; s <= 5; ++s) {
    StepFunction ind = StepFunction::indicator(DyadicInterval{s, 0}, 7);
    CHECK(*hp_norm(ind, 1.0).exact == DyadicRational(2 + s, s + 1));
  }
}

TEST_CASE("modulus of continuity in Lp") {
  // Walsh polynomials below the block are invariant under I_n shifts.
  for (std::uint64_t m : {0ull, 1ull, 3ull})
    CHECK(modulus_lp(walsh(m, 5), 2, 1.0).value == 0.0);
  CHECK(*modulus_lp(rademacher(0, 4), 0, 1.0).exact == DyadicRational(2));
  CHECK_THROWS(modulus_lp(walsh(1, 3), 4, 1.0));
  CHECK_THROWS(modulus_lp(walsh(1, 3), 1, 0.5));

  std::mt19937_64 rng(34);
  for (int i = 0; i < 10; ++i) {
    StepFunction f = StepFunction::random(6, rng(), -1.0, 1.0);
    DyadicRational prev;
    for (int n = 0; n <= 6; ++n) {
      DyadicRational w = *modulus_lp(f, n, 1.0).exact;
      if (n > 0) REQUIRE(w <= prev);  // non-increasing in n
      prev = w;
    }
  }
}

TEST_CASE("watari sandwich") {
  std::mt19937_64 rng(35);
  for (int i = 0; i < 20; ++i) {
    StepFunction f = StepFunction::random(8, rng(), -1.0, 1.0);
    for (int n = 0; n <= 8; ++n) {
      // Exact at p = 1.
      DyadicRational omega = *modulus_lp(f, n, 1.0).exact;
      DyadicRational err = *lp_norm(f - partial_sum(f, std::uint64_t(1) << n), 1.0).exact;
      REQUIRE(err <= omega);
      REQUIRE(omega <= DyadicRational(2) * err);
      // Float at p = 2.
      double omega2 = modulus_lp(f, n, 2.0).value;
      double err2 = lp_norm(f - partial_sum(f, std::uint64_t(1) << n), 2.0).value;
      REQUIRE(err2 <= omega2 * (1.0 + 1e-12));
      REQUIRE(omega2 <= 2.0 * err2 * (1.0 + 1e-12) + 1e-15);
    }
  }
}

TEST_CASE("modulus in Hp") {
  std::mt19937_64 rng(36);
  StepFunction f = StepFunction::random(6, rng(), -1.0, 1.0);
  CHECK(modulus_hp(f, 6, 1.0).value == 0.0);  // full resolution
  CHECK(modulus_hp(f, 6, 0.5).value == 0.0);
  // omega_{H_1} dominates omega-free error: ||F - S_{2^n}F||_1 <= ||...||_{H_1}.
  for (int n = 0; n <= 6; ++n) {
    DyadicRational hp = *modulus_hp(f, n, 1.0).exact;
    DyadicRational lp = *lp_norm(f - partial_sum(f, std::uint64_t(1) << n), 1.0).exact;
    CHECK(lp <= hp);
  }
}

TEST_CASE("best approximation sandwich") {
  StepFunction f = walsh(3, 5) + walsh(9, 5).scaled(DyadicRational(1, 1));
  // Walsh polynomial of order < 2^4: zero error at n = 4.
  auto b = best_approx_bounds(f, 4, 1.0);
  CHECK(b.lower == 0.0);
  CHECK(b.upper == 0.0);
  std::mt19937_64 rng(37);
  for (int i = 0; i < 10; ++i) {
    StepFunction g = StepFunction::random(6, rng(), -1.0, 1.0);
    for (int n = 0; n <= 6; ++n) {
      auto bounds = best_approx_bounds(g, n, 1.0);
      double err = lp_norm(g - partial_sum(g, std::uint64_t(1) << n), 1.0).value;
      CHECK(bounds.lower <= err);  // E_n is at most the S_{2^n} error itself
      CHECK(bounds.upper == err);
      CHECK(bounds.lower <= bounds.upper);
    }
  }
}
