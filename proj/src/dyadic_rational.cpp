#include "walshkit/dyadic_rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace walshkit {

namespace {

using UInt128 = unsigned __int128;

UInt128 uabs(Int128 v) { return v < 0 ? UInt128(0) - UInt128(v) : UInt128(v); }

int trailing_zeros(Int128 v) {
  UInt128 u = uabs(v);
  int tz = 0;
  while ((u & 1) == 0) {
    u >>= 1;
    ++tz;
  }
  return tz;
}

}  // namespace

std::string int128_to_string(Int128 v) {
  if (v == 0) return "0";
  UInt128 u = uabs(v);
  char buf[48];
  int pos = 48;
  while (u != 0) {
    buf[--pos] = char('0' + int(u % 10));
    u /= 10;
  }
  std::string s(buf + pos, buf + 48);
  return v < 0 ? "-" + s : s;
}

std::optional<Int128> int128_from_string(std::string_view s) {
  if (s.empty()) return std::nullopt;
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) return std::nullopt;
  UInt128 u = 0;
  const UInt128 limit = neg ? (UInt128(1) << 127) : (UInt128(1) << 127) - 1;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    UInt128 next = u * 10 + UInt128(s[i] - '0');
    if (next < u || next > limit) return std::nullopt;
    u = next;
  }
  return neg ? -Int128(u) : Int128(u);
}

DyadicRational::DyadicRational(Int128 num, int exp) : num_(num), exp_(exp) {
  if (exp < 0) throw std::invalid_argument("DyadicRational: negative denominator exponent");
  normalize();
}

void DyadicRational::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  int shift = std::min(exp_, trailing_zeros(num_));
  num_ >>= shift;
  exp_ -= shift;
}

DyadicRational DyadicRational::pow2(int e) {
  DyadicRational r;
  if (e >= 0) {
    if (e > 125) throw std::invalid_argument("DyadicRational::pow2: exponent too large");
    r.num_ = Int128(1) << e;
    r.exp_ = 0;
  } else {
    r.num_ = 1;
    r.exp_ = -e;
  }
  return r;
}

std::optional<DyadicRational> DyadicRational::parse(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    auto n = int128_from_string(s);
    if (!n) return std::nullopt;
    DyadicRational r;
    r.num_ = *n;
    return r;
  }
  std::string_view num_part = s.substr(0, slash);
  std::string_view den_part = s.substr(slash + 1);
  if (den_part.size() < 3 || den_part.substr(0, 2) != "2^") return std::nullopt;
  auto n = int128_from_string(num_part);
  auto e = int128_from_string(den_part.substr(2));
  if (!n || !e || *e < 0 || *e > 125) return std::nullopt;
  return DyadicRational(*n, int(*e));
}

double DyadicRational::to_double() const {
  return std::ldexp(static_cast<double>(num_), -exp_);
}

std::string DyadicRational::to_string() const {
  return int128_to_string(num_) + "/2^" + std::to_string(exp_);
}

DyadicRational DyadicRational::abs() const {
  DyadicRational r = *this;
  if (r.num_ < 0) r.num_ = -r.num_;
  return r;
}

DyadicRational DyadicRational::operator-() const {
  DyadicRational r = *this;
  r.num_ = -r.num_;
  return r;
}

DyadicRational& DyadicRational::operator+=(const DyadicRational& o) {
  int e = std::max(exp_, o.exp_);
  num_ = (num_ << (e - exp_)) + (o.num_ << (e - o.exp_));
  exp_ = e;
  normalize();
  return *this;
}

DyadicRational& DyadicRational::operator-=(const DyadicRational& o) { return *this += -o; }

DyadicRational& DyadicRational::operator*=(const DyadicRational& o) {
  num_ *= o.num_;
  exp_ += o.exp_;
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
  int e = std::max(a.exp_, b.exp_);
  Int128 lhs = a.num_ << (e - a.exp_);
  Int128 rhs = b.num_ << (e - b.exp_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace walshkit
