// Exact arithmetic on dyadic rationals a / 2^b with 128-bit numerators.
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace walshkit {

using Int128 = __int128;

std::string int128_to_string(Int128 v);
std::optional<Int128> int128_from_string(std::string_view s);

// Value = num / 2^exp, kept canonical: num odd or exp == 0.
class DyadicRational {
 public:
  constexpr DyadicRational() = default;
  DyadicRational(long long units) : num_(units) {}
  DyadicRational(Int128 num, int exp);

  // 2^e for any sign of e.
  static DyadicRational pow2(int e);
  // Parses "a/2^b" or a bare integer "a".
  static std::optional<DyadicRational> parse(std::string_view s);

  Int128 num() const { return num_; }
  int exp() const { return exp_; }
  bool is_zero() const { return num_ == 0; }

  double to_double() const;
  std::string to_string() const;  // canonical "a/2^b"

  DyadicRational abs() const;
  DyadicRational operator-() const;
  DyadicRational& operator+=(const DyadicRational& o);
  DyadicRational& operator-=(const DyadicRational& o);
  DyadicRational& operator*=(const DyadicRational& o);

  friend DyadicRational operator+(DyadicRational a, const DyadicRational& b) { return a += b; }
  friend DyadicRational operator-(DyadicRational a, const DyadicRational& b) { return a -= b; }
  friend DyadicRational operator*(DyadicRational a, const DyadicRational& b) { return a *= b; }

  friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
    return a.num_ == b.num_ && a.exp_ == b.exp_;
  }
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

 private:
  void normalize();

  Int128 num_ = 0;
  int exp_ = 0;
};

}  // namespace walshkit
