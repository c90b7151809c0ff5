// JSON (de)serialization of step functions and coefficient vectors.
//
// File schema: {"level": N, "mode": "exact"|"float", "values": [...]} with
// exact values written as canonical "a/2^b" strings; the round trip is
// bit-exact in both modes.
#pragma once

#include <string>

#include <json.hpp>

#include "walshkit/group.hpp"
#include "walshkit/transform.hpp"

namespace walshkit {

nlohmann::json step_to_json(const StepFunction& f);
StepFunction step_from_json(const nlohmann::json& j);

nlohmann::json coeffs_to_json(const CoefficientVector& c);
CoefficientVector coeffs_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

// Shortest decimal that round-trips the double.
std::string format_double(double x);

}  // namespace walshkit
