#include "gyp/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace gyp {

using nlohmann::json;

ProbabilityMeasure measure_from_json(const json& j) {
  try {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "discrete") {
      std::vector<std::string> labels;
      std::vector<double> masses;
      for (const auto& atom : j.at("atoms")) {
        labels.push_back(atom.at("label").get<std::string>());
        masses.push_back(atom.at("mass").get<double>());
      }
      return ProbabilityMeasure::discrete(std::move(labels), std::move(masses));
    }
    if (kind == "density") {
      std::vector<PolyPiece> pieces;
      for (const auto& pc : j.at("pieces")) {
        const auto& iv = pc.at("interval");
        pieces.push_back({Interval{iv.at(0).get<double>(), iv.at(1).get<double>()},
                          Polynomial(pc.at("coeffs").get<std::vector<double>>())});
      }
      return ProbabilityMeasure::density(std::move(pieces));
    }
    if (kind == "named") {
      std::string name = j.at("name").get<std::string>();
      auto support_of = [&]() -> Interval {
        const auto& s = j.at("support").at(0);
        return {s.at(0).get<double>(), s.at(1).get<double>()};
      };
      if (name == "uniform") {
        Interval s = support_of();
        return ProbabilityMeasure::uniform(s.lo, s.hi);
      }
      if (name == "beta") {
        return ProbabilityMeasure::beta(j.at("params").at(0).get<int>(),
                                        j.at("params").at(1).get<int>());
      }
      if (name == "truncated-gaussian") {
        Interval s = support_of();
        return ProbabilityMeasure::truncated_gaussian(
            j.at("params").at(0).get<double>(), j.at("params").at(1).get<double>(),
            s.lo, s.hi);
      }
      throw InputError("unknown named measure: " + name);
    }
    throw InputError("unknown measure kind: " + kind);
  } catch (const json::exception& e) {
    throw InputError(std::string("measure JSON schema error: ") + e.what());
  }
}

ProbabilityMeasure load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(std::string("JSON parse error in ") + path + ": " + e.what());
  }
  return measure_from_json(j);
}

Partition partition_from_json(const json& j, const ProbabilityMeasure& ref) {
  try {
    if (j.contains("breakpoints")) {
      if (ref.kind != MeasureKind::Density)
        throw InputError("breakpoints partition requires a density measure");
      return Partition::from_breakpoints(ref.support(),
                                         j.at("breakpoints").get<std::vector<double>>());
    }
    if (j.contains("groups")) {
      if (ref.kind != MeasureKind::Discrete)
        throw InputError("groups partition requires a discrete measure");
      Partition pi;
      for (const auto& group : j.at("groups")) {
        std::vector<std::size_t> idx;
        for (const auto& lbl : group) {
          auto it = std::find(ref.labels.begin(), ref.labels.end(),
                              lbl.get<std::string>());
          if (it == ref.labels.end())
            throw InputError("unknown atom label in partition: " +
                             lbl.get<std::string>());
          idx.push_back(static_cast<std::size_t>(it - ref.labels.begin()));
        }
        pi.cells.push_back(Cell::of_atoms(std::move(idx)));
      }
      return pi;
    }
    throw InputError("partition JSON needs \"breakpoints\" or \"groups\"");
  } catch (const json::exception& e) {
    throw InputError(std::string("partition JSON schema error: ") + e.what());
  }
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

JsonObject& JsonObject::field(const std::string& key, double v) {
  fields_.emplace_back(key, format_double(v));
  return *this;
}
JsonObject& JsonObject::field(const std::string& key, ExtendedReal v) {
  return field(key, v.value());
}
JsonObject& JsonObject::field(const std::string& key, int v) {
  fields_.emplace_back(key, std::to_string(v));
  return *this;
}
JsonObject& JsonObject::field(const std::string& key, long v) {
  fields_.emplace_back(key, std::to_string(v));
  return *this;
}
JsonObject& JsonObject::field(const std::string& key, bool v) {
  fields_.emplace_back(key, v ? "true" : "false");
  return *this;
}
JsonObject& JsonObject::field(const std::string& key, const std::string& v) {
  fields_.emplace_back(key, json(v).dump());
  return *this;
}

std::string JsonObject::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (i) out += ",";
    out += json(fields_[i].first).dump() + ":" + fields_[i].second;
  }
  out += "}";
  return out;
}

}  // namespace gyp
