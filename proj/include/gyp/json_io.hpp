#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gyp/extended_real.hpp"
#include "gyp/measure.hpp"
#include "gyp/partition.hpp"

namespace gyp {

/// Parses the measure schema:
///   {"kind":"discrete","atoms":[{"label":"a","mass":0.5},...]}
///   {"kind":"density","support":[[0,1]],"pieces":[{"interval":[0,1],"coeffs":[0,6,-6]}]}
///   {"kind":"named","name":"beta","params":[2,2],"support":[[0,1]]}
/// Coefficients are in ascending degree order. Throws InputError.
ProbabilityMeasure measure_from_json(const nlohmann::json& j);
ProbabilityMeasure load_measure(const std::string& path);

/// Partition schema: {"breakpoints":[0.25,0.75]} (continuous, implicit
/// support endpoints) or {"groups":[["a"],["b","c"]]} (discrete).
Partition partition_from_json(const nlohmann::json& j, const ProbabilityMeasure& ref);

/// Flat JSON object writer with canonical field order and 17-significant-
/// digit floats; +inf serializes as the string "inf".
class JsonObject {
 public:
  JsonObject& field(const std::string& key, double v);
  JsonObject& field(const std::string& key, ExtendedReal v);
  JsonObject& field(const std::string& key, int v);
  JsonObject& field(const std::string& key, long v);
  JsonObject& field(const std::string& key, bool v);
  JsonObject& field(const std::string& key, const std::string& v);
  // string literals would otherwise convert to bool
  JsonObject& field(const std::string& key, const char* v) {
    return field(key, std::string(v));
  }
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string format_double(double v);

}  // namespace gyp
