#include "walshkit/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>

namespace walshkit {

namespace {

StepFunction storage_from_json(const nlohmann::json& j) {
  int level = j.at("level").get<int>();
  std::string mode = j.at("mode").get<std::string>();
  const auto& values = j.at("values");
  if (mode == "float") {
    std::vector<double> vals;
    vals.reserve(values.size());
    for (const auto& v : values) vals.push_back(v.get<double>());
    return StepFunction::from_values(level, std::move(vals));
  }
  if (mode != "exact") throw std::invalid_argument("step function: unknown mode " + mode);
  std::vector<DyadicRational> parsed;
  parsed.reserve(values.size());
  int max_exp = 0;
  for (const auto& v : values) {
    auto r = DyadicRational::parse(v.get<std::string>());
    if (!r) throw std::invalid_argument("step function: bad exact value");
    max_exp = std::max(max_exp, r->exp());
    parsed.push_back(*r);
  }
  std::vector<Int128> nums;
  nums.reserve(parsed.size());
  for (const auto& r : parsed) nums.push_back(r.num() << (max_exp - r.exp()));
  return StepFunction::from_exact(level, std::move(nums), max_exp);
}

nlohmann::json storage_to_json(const StepFunction& f) {
  nlohmann::json j;
  j["level"] = f.level();
  j["mode"] = f.is_exact() ? "exact" : "float";
  nlohmann::json values = nlohmann::json::array();
  for (std::size_t ix = 0; ix < f.size(); ++ix) {
    if (f.is_exact())
      values.push_back(f.exact_value(ix).to_string());
    else
      values.push_back(f.value(ix));
  }
  j["values"] = std::move(values);
  return j;
}

}  // namespace

nlohmann::json step_to_json(const StepFunction& f) { return storage_to_json(f); }

StepFunction step_from_json(const nlohmann::json& j) { return storage_from_json(j); }

nlohmann::json coeffs_to_json(const CoefficientVector& c) { return storage_to_json(c.storage()); }

CoefficientVector coeffs_from_json(const nlohmann::json& j) {
  return CoefficientVector(storage_from_json(j));
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

std::string format_double(double x) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace walshkit
