#include "walshkit/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "walshkit/io.hpp"
#include "walshkit/norms.hpp"
#include "walshkit/parallel.hpp"

namespace walshkit {

namespace {

std::string fmt(double x) { return format_double(x); }

int block_of(std::uint64_t n) { return std::bit_width(n) - 1; }  // |n|

double bound_shape(double p, const IndexExpansion& e) {
  return p < 1.0 ? std::exp2(double(e.gap) * (1.0 / p - 1.0)) : double(e.variation);
}

nlohmann::json spec_config(const ConstructionSpec& spec) {
  nlohmann::json c;
  c["theorem"] = theorem_to_string(spec.theorem);
  c["p"] = spec.p;
  c["phi"] = spec.phi.describe();
  c["base"] = spec.base.describe();
  c["level"] = spec.resolution;
  c["budget"] = spec.budget;
  return c;
}

}  // namespace

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  out << "# walshkit-report v1\n";
  out << "# id: " << id << "\n";
  out << "# config: " << config.dump() << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  for (const auto& [k, v] : summary) out << "# summary: " << k << "=" << v << "\n";
  out << "# summary: violations=" << violations << "\n";
  return out.str();
}

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json j;
  j["id"] = id;
  j["config"] = config;
  j["columns"] = columns;
  j["rows"] = rows;
  j["summary"] = summary;
  j["violations"] = violations;
  return j;
}

double fit_log2_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit_log2_slope: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(ys[i] > 0.0)) throw std::invalid_argument("fit_log2_slope: values must be positive");
    double y = std::log2(ys[i]);
    sx += xs[i];
    sy += y;
    sxx += xs[i] * xs[i];
    sxy += xs[i] * y;
  }
  double n = double(xs.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ExperimentReport lebesgue_sweep(std::uint64_t max_n, std::optional<SampleSpec> sample) {
  // Exhaustive part capped at 2^12; larger indices go through sampling.
  if (max_n < 1 || max_n > (std::uint64_t(1) << 12))
    throw std::invalid_argument("lebesgue_sweep: exhaustive max_n is capped at 4096");
  std::vector<std::uint64_t> indices;
  for (std::uint64_t n = 1; n <= max_n; ++n) indices.push_back(n);
  if (sample) {
    if (sample->max_exponent < 1 || sample->max_exponent > 29)
      throw std::invalid_argument("lebesgue_sweep: bad sample exponent");
    std::mt19937_64 rng(sample->seed);
    std::set<std::uint64_t> extra;
    const std::uint64_t lo = max_n + 1;
    const std::uint64_t hi = std::uint64_t(1) << sample->max_exponent;
    if (hi <= lo || hi - lo < sample->count)
      throw std::invalid_argument("lebesgue_sweep: sample range too small");
    while (extra.size() < sample->count) extra.insert(lo + rng() % (hi - lo));
    indices.insert(indices.end(), extra.begin(), extra.end());
  }

  struct Row {
    IndexExpansion e;
    DyadicRational lebesgue;
    bool ok = true;
  };
  std::vector<Row> data(indices.size());
  parallel_for(
      indices.size(),
      [&](std::size_t i) {
        Row& r = data[i];
        r.e = expand(indices[i]);
        r.lebesgue = lebesgue_constant(indices[i]);
        // (V/8 <= L_S) as 8 L_S >= V, exact.
        DyadicRational v{static_cast<long long>(r.e.variation)};
        r.ok = DyadicRational(8) * r.lebesgue >= v && r.lebesgue <= v;
      },
      16);

  ExperimentReport rep;
  rep.id = "lebesgue_sweep";
  rep.config = {{"max_n", max_n}};
  if (sample)
    rep.config["sample"] = {{"count", sample->count},
                            {"seed", sample->seed},
                            {"max_exponent", sample->max_exponent}};
  rep.columns = {"n", "order", "low", "gap", "variation", "lebesgue", "ratio"};
  double min_ratio = 1.0, max_ratio = 0.0;
  std::uint64_t argmin = 0, argmax = 0;
  for (const Row& r : data) {
    double ratio = r.lebesgue.to_double() / double(r.e.variation);
    if (ratio < min_ratio) min_ratio = ratio, argmin = r.e.value;
    if (ratio > max_ratio) max_ratio = ratio, argmax = r.e.value;
    if (!r.ok) ++rep.violations;
    rep.rows.push_back({std::to_string(r.e.value), std::to_string(r.e.order),
                        std::to_string(r.e.low), std::to_string(r.e.gap),
                        std::to_string(r.e.variation), r.lebesgue.to_string(), fmt(ratio)});
  }
  rep.summary["min_ratio"] = fmt(min_ratio);
  rep.summary["min_ratio_n"] = std::to_string(argmin);
  rep.summary["max_ratio"] = fmt(max_ratio);
  rep.summary["max_ratio_n"] = std::to_string(argmax);
  return rep;
}

ExperimentReport boundedness_sweep(double p, std::uint64_t max_n, int trials,
                                   std::uint64_t seed, int level) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("boundedness_sweep: p in (0,1]");
  if (max_n < 2 || max_n > (std::uint64_t(1) << level))
    throw std::invalid_argument("boundedness_sweep: max_n must fit the level");
  if (trials < 1) throw std::invalid_argument("boundedness_sweep: need trials >= 1");

  const std::size_t size = std::size_t(1) << level;
  struct Trial {
    std::vector<double> coeffs;       // fhat(0..2^N-1)
    std::vector<double> running_max;  // slice m: max_{m' <= m} |S_{2^m'} F|
    double hp = 0.0;
  };
  std::vector<Trial> prepared(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    StepFunction F =
        p < 1.0 ? random_p_atom(p, int(t % 6), level, seed + 1000 + std::uint64_t(t)).f.to_float()
                : StepFunction::random(level, seed + 1000 + std::uint64_t(t), -1.0, 1.0,
                                       Mode::Float);
    Trial& tr = prepared[std::size_t(t)];
    tr.hp = hp_norm(F, p).value;
    CoefficientVector c = fwht(F);
    tr.coeffs = c.storage().floats();
    // Slice m of running_max starts as |S_{2^m}F| = |E_m F|...
    tr.running_max.assign(std::size_t(level + 1) * size, 0.0);
    std::vector<double> avg = F.floats();
    for (int m = level; m >= 0; --m) {
      double* slice = tr.running_max.data() + std::ptrdiff_t(m) * std::ptrdiff_t(size);
      for (std::size_t ix = 0; ix < size; ++ix) slice[ix] = std::fabs(avg[ix]);
      if (m == 0) break;
      std::size_t bit = std::size_t(1) << (m - 1);
      for (std::size_t ix = 0; ix < size; ++ix) {
        if (ix & bit) continue;
        double merged = 0.5 * (avg[ix] + avg[ix | bit]);
        avg[ix] = merged;
        avg[ix | bit] = merged;
      }
    }
    // ...then accumulates upward into the prefix maximum over m' <= m.
    for (int m = 1; m <= level; ++m) {
      double* cur = tr.running_max.data() + std::ptrdiff_t(m) * std::ptrdiff_t(size);
      const double* prev = tr.running_max.data() + std::ptrdiff_t(m - 1) * std::ptrdiff_t(size);
      for (std::size_t ix = 0; ix < size; ++ix) cur[ix] = std::max(cur[ix], prev[ix]);
    }
  }

  struct NRow {
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
  };
  std::vector<NRow> nrows(max_n + 1);
  parallel_for(
      max_n,
      [&](std::size_t i) {
        std::uint64_t n = i + 1;
        IndexExpansion e = expand(n);
        double shape = bound_shape(p, e);
        int m_floor = block_of(n);
        NRow& row = nrows[n];
        std::vector<double> work(size);
        for (const Trial& tr : prepared) {
          std::copy(tr.coeffs.begin(), tr.coeffs.end(), work.begin());
          std::fill(work.begin() + std::ptrdiff_t(n), work.end(), 0.0);
          StepFunction Sn = ifwht(CoefficientVector(StepFunction::from_values(level, work)));
          const double* rm =
              tr.running_max.data() + std::ptrdiff_t(m_floor) * std::ptrdiff_t(size);
          double sum = 0.0;
          for (std::size_t ix = 0; ix < size; ++ix) {
            // (S_n F)* = max(max_{2^m <= n} |S_{2^m}F|, |S_n F|).
            double star = std::max(rm[ix], std::fabs(Sn.value(ix)));
            sum += std::pow(star, p);
          }
          double hp = std::pow(std::ldexp(sum, -level), 1.0 / p);
          double ratio = hp / (shape * tr.hp);
          row.max_ratio = std::max(row.max_ratio, ratio);
          row.mean_ratio += ratio;
        }
        row.mean_ratio /= double(trials);
      },
      8);

  ExperimentReport rep;
  rep.id = "boundedness_sweep";
  rep.config = {{"p", p}, {"max_n", max_n}, {"trials", trials}, {"seed", seed}, {"level", level}};
  rep.columns = {"n", "gap", "variation", "shape", "max_ratio", "mean_ratio"};
  int max_block = block_of(max_n);
  std::vector<double> block_max(std::size_t(max_block) + 1, 0.0);
  double first_half_max = 0.0, sup = 0.0;
  for (std::uint64_t n = 1; n <= max_n; ++n) {
    IndexExpansion e = expand(n);
    const NRow& row = nrows[n];
    sup = std::max(sup, row.max_ratio);
    block_max[std::size_t(block_of(n))] = std::max(block_max[std::size_t(block_of(n))], row.max_ratio);
    if (n <= max_n / 2) first_half_max = std::max(first_half_max, row.max_ratio);
    rep.rows.push_back({std::to_string(n), std::to_string(e.gap), std::to_string(e.variation),
                        fmt(bound_shape(p, e)), fmt(row.max_ratio), fmt(row.mean_ratio)});
  }
  for (int m = 0; m <= max_block; ++m) {
    rep.summary["block_max_" + std::to_string(m)] = fmt(block_max[std::size_t(m)]);
    if (block_max[std::size_t(m)] > 2.0 * first_half_max) ++rep.violations;
  }
  rep.summary["sup_ratio"] = fmt(sup);
  rep.summary["first_half_max"] = fmt(first_half_max);
  return rep;
}

ExperimentReport divergence_run(const ConstructionSpec& spec) {
  if (spec.theorem == Theorem::T4b)
    throw std::invalid_argument("divergence_run: use the convergence run for T4b");
  RealizedConstruction rc = build(spec);
  const double p = spec.p;

  ExperimentReport rep;
  rep.id = "divergence_run";
  rep.config = spec_config(spec);

  std::vector<double> ks, measured, shapes;
  if (spec.theorem == Theorem::T5b) {
    rep.columns = {"k", "alpha", "variation", "error_l1", "floor", "tail_bound", "modulus_h1"};
    for (std::size_t k = 0; k < rc.alphas.size(); ++k) {
      const IndexExpansion& e = rc.alphas[k];
      StepFunction diff = rc.F - partial_sum(rc.F, e.value);
      DyadicRational err = *lp_norm(diff, 1.0).exact;
      // floor 1/8 - 2/V(alpha_k); exact when V is a power of two.
      double floor_val = 0.125 - 2.0 / double(e.variation);
      bool floor_ok;
      if (std::has_single_bit(std::uint32_t(e.variation))) {
        DyadicRational floor_exact =
            DyadicRational(1, 3) - DyadicRational(2) * DyadicRational::pow2(-std::countr_zero(std::uint32_t(e.variation)));
        floor_ok = err >= floor_exact;
      } else {
        floor_ok = err.to_double() >= floor_val - 1e-15;
      }
      if (!floor_ok) ++rep.violations;
      // Tail bound: ||F - S_{2^|alpha_k|}F||_{H_1} <= sum_{i>=k} lambda_i, exact.
      DyadicRational omega = *modulus_hp(rc.F, e.order, 1.0).exact;
      DyadicRational tail(0);
      for (std::size_t i = k; i < rc.lambdas.size(); ++i) tail += rc.lambdas[i];
      if (omega > tail) ++rep.violations;
      rep.rows.push_back({std::to_string(k), std::to_string(e.value),
                          std::to_string(e.variation), err.to_string(), fmt(floor_val),
                          tail.to_string(), omega.to_string()});
      ks.push_back(double(k));
      measured.push_back(err.to_double());
      shapes.push_back(std::max(floor_val, 1e-300));
    }
    rep.summary["min_error"] = fmt(*std::min_element(measured.begin(), measured.end()));
    return rep;
  }

  rep.columns = {"k", "alpha", "gap", "variation", "measured", "shape", "ratio"};
  for (std::size_t k = 0; k < rc.alphas.size(); ++k) {
    const IndexExpansion& e = rc.alphas[k];
    StepFunction Sn = partial_sum(rc.F, e.value);
    double phi = spec.phi(e.value);
    double m_k, g_k;
    if (spec.theorem == Theorem::T1b) {
      // ||S F / Phi||^p in the weak quasi-norm, against 2^{d(1-p)/2} / Phi^{p/2}.
      m_k = weak_lp_sup(Sn, p).value / std::pow(phi, p);
      g_k = std::exp2(double(e.gap) * (1.0 - p) / 2.0) / std::pow(phi, p / 2.0);
    } else {  // T2b
      m_k = lp_norm(Sn, 1.0).value / phi;
      g_k = std::sqrt(double(e.variation) / phi);
    }
    rep.rows.push_back({std::to_string(k), std::to_string(e.value), std::to_string(e.gap),
                        std::to_string(e.variation), fmt(m_k), fmt(g_k),
                        fmt(g_k > 0 ? m_k / g_k : 0.0)});
    ks.push_back(double(k));
    measured.push_back(m_k);
    shapes.push_back(g_k);
  }

  // Growth diagnostics over k >= 1 (the first term may have an empty partial
  // block and measure 0).
  std::vector<double> fk(ks.begin() + 1, ks.end());
  std::vector<double> fm(measured.begin() + 1, measured.end());
  std::vector<double> fs(shapes.begin() + 1, shapes.end());
  double slope_m = fit_log2_slope(fk, fm);
  double slope_g = fit_log2_slope(fk, fs);
  rep.summary["slope_measured"] = fmt(slope_m);
  rep.summary["slope_shape"] = fmt(slope_g);
  rep.summary["slope_rel_dev"] = fmt(std::fabs(slope_m - slope_g) / std::fabs(slope_g));
  double min_ratio = 1e300;
  bool monotone = true;
  for (std::size_t k = 2; k < measured.size(); ++k) {
    min_ratio = std::min(min_ratio, measured[k] / shapes[k]);
    if (k >= 3 && measured[k] < measured[k - 1]) monotone = false;
  }
  rep.summary["min_ratio_from_k2"] = fmt(min_ratio);
  rep.summary["monotone_from_k2"] = monotone ? "true" : "false";
  if (!monotone) ++rep.violations;
  return rep;
}

ExperimentReport convergence_run(const IndexSequence& seq, double p, int level,
                                 std::uint64_t seed, double decay_beta) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("convergence_run: p in (0,1]");
  if (level < 2 || level > kMaxLevel) throw std::invalid_argument("convergence_run: bad level");
  if (!(decay_beta > 0.0)) throw std::invalid_argument("convergence_run: decay must be positive");

  // Random martingale with geometrically decaying dyadic blocks: coefficient
  // scale 2^{-m(beta+1/2)} on block m makes the H_p modulus decay like
  // 2^{-beta k}, the regime the B(n)-weighted modulus bound turns into
  // convergence.
  const std::size_t size = std::size_t(1) << level;
  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return double(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  std::vector<double> coeffs(size);
  coeffs[0] = uniform();
  for (std::size_t j = 1; j < size; ++j) {
    int m = block_of(j);
    coeffs[j] = uniform() * std::exp2(-double(m) * (decay_beta + 0.5));
  }
  StepFunction F = ifwht(CoefficientVector(StepFunction::from_values(level, coeffs)));
  double hpF = hp_norm(F, p).value;

  ExperimentReport rep;
  rep.id = "convergence_run";
  rep.config = {{"sequence", seq.describe()}, {"p", p},
                {"level", level},            {"seed", seed},
                {"decay", decay_beta},       {"F", "random-decaying"}};
  rep.columns = {"n", "k", "gap", "variation", "error", "modulus", "shape", "ratio"};

  double first_err = -1.0, last_err = 0.0, max_ratio = 0.0;
  int max_gap = 0;
  for (std::uint64_t n : seq.values) {
    if (n < 2 || n > size) continue;
    int k = block_of(n - 1);  // 2^k < n <= 2^{k+1}
    IndexExpansion e = expand(n);
    double err = hp_norm(F - partial_sum(F, n), p).value;
    double omega = modulus_hp(F, k, p).value;
    double shape = bound_shape(p, e) * omega;
    double ratio = shape > 0.0 ? err / shape : 0.0;
    max_ratio = std::max(max_ratio, ratio);
    max_gap = std::max(max_gap, e.gap);
    if (first_err < 0.0) first_err = err;
    last_err = err;
    rep.rows.push_back({std::to_string(n), std::to_string(k), std::to_string(e.gap),
                        std::to_string(e.variation), fmt(err), fmt(omega), fmt(shape),
                        fmt(ratio)});
  }
  if (rep.rows.empty()) throw std::invalid_argument("convergence_run: no usable indices");
  rep.summary["max_ratio"] = fmt(max_ratio);
  rep.summary["first_error"] = fmt(first_err);
  rep.summary["last_error"] = fmt(last_err);
  rep.summary["hp_norm_F"] = fmt(hpF);
  if (max_gap <= 2) {
    bool decayed = last_err < first_err / 4.0;
    rep.summary["decay_ok"] = decayed ? "true" : "false";
    if (!decayed) ++rep.violations;
  }
  return rep;
}

ExperimentReport convergence_run(const ConstructionSpec& spec) {
  if (spec.theorem != Theorem::T4b)
    throw std::invalid_argument("convergence_run(spec): only the T4b construction applies");
  RealizedConstruction rc = build(spec);
  const double p = spec.p;

  ExperimentReport rep;
  rep.id = "convergence_run_t4b";
  rep.config = spec_config(spec);
  rep.columns = {"k", "alpha", "gap", "error_weak", "floor", "margin"};
  double min_err = 1e300;
  for (std::size_t k = 0; k < rc.alphas.size(); ++k) {
    const IndexExpansion& e = rc.alphas[k];
    StepFunction diff = partial_sum(rc.F, e.value) - rc.F;
    double err = weak_lp_norm(diff, p).value;
    double floor_val =
        std::exp2(-1.0 / p) - 2.0 / std::exp2((1.0 / p - 1.0) * double(e.gap));
    if (err < floor_val) ++rep.violations;
    min_err = std::min(min_err, err);
    rep.rows.push_back({std::to_string(k), std::to_string(e.value), std::to_string(e.gap),
                        fmt(err), fmt(floor_val), fmt(err - floor_val)});
  }
  rep.summary["min_error_weak"] = fmt(min_err);
  return rep;
}

}  // namespace walshkit
