#include <doctest.h>

#include <random>

#include "walshkit/dyadic_rational.hpp"

using namespace walshkit;

TEST_CASE("canonical form") {
  CHECK(DyadicRational(6, 1) == DyadicRational(3));
  CHECK(DyadicRational(4, 2) == DyadicRational(1));
  CHECK(DyadicRational(0, 7) == DyadicRational(0));
  CHECK(DyadicRational(3, 2).to_string() == "3/2^2");
  CHECK(DyadicRational(-1, 1).to_string() == "-1/2^1");
  CHECK(DyadicRational(5).to_string() == "5/2^0");
}

TEST_CASE("parsing") {
  CHECK(*DyadicRational::parse("3/2^2") == DyadicRational(3, 2));
  CHECK(*DyadicRational::parse("-7/2^3") == DyadicRational(-7, 3));
  CHECK(*DyadicRational::parse("42") == DyadicRational(42));
  CHECK(*DyadicRational::parse("6/2^1") == DyadicRational(3));  // non-canonical input
  CHECK(!DyadicRational::parse(""));
  CHECK(!DyadicRational::parse("1/3"));
  CHECK(!DyadicRational::parse("x/2^2"));
  CHECK(!DyadicRational::parse("1/2^999"));
}

TEST_CASE("string round trip") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    auto num = Int128(std::int64_t(rng())) * Int128(1 + (rng() & 0xffff));
    DyadicRational r(num, int(rng() % 60));
    CHECK(*DyadicRational::parse(r.to_string()) == r);
  }
}

TEST_CASE("arithmetic") {
  DyadicRational half(1, 1), quarter(1, 2);
  CHECK(half + quarter == DyadicRational(3, 2));
  CHECK(half - quarter == quarter);
  CHECK(half * half == quarter);
  CHECK((-half).to_double() == -0.5);
  CHECK(DyadicRational(-5, 3).abs() == DyadicRational(5, 3));
  CHECK(DyadicRational::pow2(-3) == DyadicRational(1, 3));
  CHECK(DyadicRational::pow2(10) == DyadicRational(1024));
  CHECK(half < DyadicRational(3, 2));
  CHECK(DyadicRational(-1, 1) < DyadicRational(0));
}

TEST_CASE("arithmetic agrees with doubles on random small values") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    DyadicRational a(std::int64_t(rng() % 4096) - 2048, int(rng() % 10));
    DyadicRational b(std::int64_t(rng() % 4096) - 2048, int(rng() % 10));
    CHECK((a + b).to_double() == a.to_double() + b.to_double());
    CHECK((a * b).to_double() == a.to_double() * b.to_double());
    CHECK((a < b) == (a.to_double() < b.to_double()));
  }
}

TEST_CASE("int128 strings") {
  Int128 big = (Int128(1) << 100) + 12345;
  CHECK(*int128_from_string(int128_to_string(big)) == big);
  CHECK(*int128_from_string("-9223372036854775809") == -(Int128(1) << 63) - 1);
  CHECK(!int128_from_string("999999999999999999999999999999999999999999"));
}
