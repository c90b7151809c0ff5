#include "walshkit/index.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace walshkit {

IndexExpansion expand(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("expand: n must be positive");
  IndexExpansion e;
  e.value = n;
  e.order = std::bit_width(n) - 1;
  e.low = std::countr_zero(n);
  e.gap = e.order - e.low;
  e.bits.resize(std::size_t(e.order) + 1);
  for (int j = 0; j <= e.order; ++j) e.bits[std::size_t(j)] = std::uint8_t((n >> j) & 1);
  int v = int(n & 1);
  for (int j = 1; j <= e.order + 1; ++j) {
    int bj = j <= e.order ? int((n >> j) & 1) : 0;
    int bprev = int((n >> (j - 1)) & 1);
    v += std::abs(bj - bprev);
  }
  e.variation = v;
  return e;
}

WeightFunction WeightFunction::one() { return WeightFunction{}; }

WeightFunction WeightFunction::log2_weight() {
  WeightFunction w;
  w.kind_ = Kind::Log2;
  return w;
}

WeightFunction WeightFunction::power(double gamma) {
  if (gamma < 0.0 || gamma > 0.25)
    throw std::invalid_argument("WeightFunction::power: gamma must lie in [0, 1/4]");
  WeightFunction w;
  w.kind_ = Kind::Power;
  w.gamma_ = gamma;
  return w;
}

WeightFunction WeightFunction::table(std::vector<std::pair<std::uint64_t, double>> entries) {
  double prev = 1.0;
  std::uint64_t prev_n = 0;
  for (const auto& [n, v] : entries) {
    if (n <= prev_n || v < prev)
      throw std::invalid_argument("WeightFunction::table: entries must be increasing with values >= 1");
    prev = v;
    prev_n = n;
  }
  WeightFunction w;
  w.kind_ = Kind::Table;
  w.table_ = std::move(entries);
  return w;
}

WeightFunction WeightFunction::parse(const std::string& text) {
  if (text == "one") return one();
  if (text == "log2") return log2_weight();
  if (text.rfind("pow:", 0) == 0) return power(std::stod(text.substr(4)));
  throw std::invalid_argument("unknown weight function: " + text);
}

double WeightFunction::operator()(std::uint64_t n) const {
  if (n == 0) throw std::invalid_argument("WeightFunction: n must be positive");
  switch (kind_) {
    case Kind::One:
      return 1.0;
    case Kind::Log2:
      return 1.0 + std::log2(double(n));
    case Kind::Power:
      return std::pow(double(n), gamma_);
    case Kind::Table: {
      double v = 1.0;
      for (const auto& [m, val] : table_) {
        if (m > n) break;
        v = val;
      }
      return v;
    }
  }
  return 1.0;
}

std::string WeightFunction::describe() const {
  switch (kind_) {
    case Kind::One:
      return "one";
    case Kind::Log2:
      return "log2";
    case Kind::Power:
      return "pow:" + std::to_string(gamma_);
    case Kind::Table:
      return "table[" + std::to_string(table_.size()) + "]";
  }
  return "?";
}

IndexSequence IndexSequence::pow2_plus_1(std::uint64_t bound) {
  IndexSequence s;
  s.kind = Kind::Pow2Plus1;
  for (int k = 0; k < 63; ++k) {
    std::uint64_t m = (std::uint64_t(1) << k) + 1;
    if (m >= bound) break;
    s.values.push_back(m);
  }
  return s;
}

IndexSequence IndexSequence::pow2_plus_half(std::uint64_t bound) {
  IndexSequence s;
  s.kind = Kind::Pow2PlusHalf;
  for (int k = 1; k < 63; ++k) {
    std::uint64_t m = (std::uint64_t(1) << k) + (std::uint64_t(1) << (k - 1));
    if (m >= bound) break;
    s.values.push_back(m);
  }
  return s;
}

IndexSequence IndexSequence::alternating_bits(std::uint64_t bound) {
  IndexSequence s;
  s.kind = Kind::AlternatingBits;
  std::uint64_t m = 1;
  while (m < bound) {
    s.values.push_back(m);
    if (m > (~std::uint64_t(0) - 1) / 4) break;
    m = 4 * m + 1;
  }
  return s;
}

IndexSequence IndexSequence::explicit_list(std::vector<std::uint64_t> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == 0 || (i > 0 && values[i] <= values[i - 1]))
      throw std::invalid_argument("IndexSequence: values must be positive and strictly increasing");
  }
  IndexSequence s;
  s.kind = Kind::ExplicitList;
  s.values = std::move(values);
  return s;
}

IndexSequence IndexSequence::parse(const std::string& text, std::uint64_t bound) {
  if (text == "pow2plus1") return pow2_plus_1(bound);
  if (text == "pow2plushalf") return pow2_plus_half(bound);
  if (text == "altbits") return alternating_bits(bound);
  if (text.rfind("list:", 0) == 0) {
    std::vector<std::uint64_t> vals;
    std::stringstream ss(text.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(std::stoull(item));
    return explicit_list(std::move(vals));
  }
  throw std::invalid_argument("unknown index sequence: " + text);
}

std::string IndexSequence::describe() const {
  switch (kind) {
    case Kind::Pow2Plus1:
      return "pow2plus1";
    case Kind::Pow2PlusHalf:
      return "pow2plushalf";
    case Kind::AlternatingBits:
      return "altbits";
    case Kind::ExplicitList: {
      std::string s = "list:";
      for (std::size_t i = 0; i < values.size(); ++i)
        s += (i ? "," : "") + std::to_string(values[i]);
      return s;
    }
  }
  return "?";
}

namespace {

IndexSequence greedy_select(const IndexSequence& ms, std::size_t max_terms,
                            auto admissible, auto advance) {
  IndexSequence out;
  out.kind = IndexSequence::Kind::ExplicitList;
  int prev_order = -1;
  for (std::uint64_t m : ms.values) {
    if (out.values.size() >= max_terms) break;
    IndexExpansion e = expand(m);
    if (e.order <= prev_order) continue;
    if (!admissible(e)) continue;
    out.values.push_back(m);
    prev_order = e.order;
    advance(e);
  }
  return out;
}

}  // namespace

IndexSequence select_summable(const IndexSequence& ms, double p, const WeightFunction& phi,
                              double budget, std::size_t max_terms) {
  if (p <= 0.0 || p > 1.0) throw std::invalid_argument("select_summable: p must lie in (0, 1]");
  if (budget <= 0.0) throw std::invalid_argument("select_summable: budget must be positive");
  auto term = [&](const IndexExpansion& e) {
    if (p < 1.0)
      return std::pow(phi(e.value), p / 2.0) / std::exp2(double(e.gap) * (1.0 - p) / 2.0);
    return std::sqrt(phi(e.value) / double(e.variation));
  };
  std::size_t k = 0;
  return greedy_select(
      ms, max_terms, [&](const IndexExpansion& e) { return term(e) <= budget * std::exp2(-double(k)); },
      [&](const IndexExpansion&) { ++k; });
}

IndexSequence select_gap_doubling(const IndexSequence& ms, double p, std::size_t max_terms) {
  if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("select_gap_doubling: p must lie in (0, 1)");
  int min_gap = 1;
  return greedy_select(
      ms, max_terms, [&](const IndexExpansion& e) { return e.gap >= min_gap; },
      [&](const IndexExpansion& e) { min_gap = 2 * e.gap; });
}

IndexSequence select_variation_squaring(const IndexSequence& ms, std::size_t max_terms) {
  long long min_variation = 2;
  return greedy_select(
      ms, max_terms, [&](const IndexExpansion& e) { return e.variation >= min_variation; },
      [&](const IndexExpansion& e) {
        min_variation = (long long)e.variation * e.variation;
      });
}

}  // namespace walshkit
