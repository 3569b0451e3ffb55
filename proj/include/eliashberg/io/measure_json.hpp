#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "eliashberg/errors.hpp"
#include "eliashberg/measure.hpp"

namespace eliashberg::io {

using nlohmann::json;

/// Parses the measure file format:
///   {"type":"einstein","omega":1.0}
///   {"type":"discrete","atoms":[{"weight":0.5,"omega":0.8}, ...]}
///   {"type":"tabulated","nodes":[[omega, density], ...]}
/// Schema violations raise ValidationError.
inline MeasureSpec measure_spec_from_json(const json& j) {
  try {
    if (!j.is_object()) throw ValidationError("measure: top level must be a JSON object");
    const std::string type = j.at("type").get<std::string>();
    if (type == "einstein") return EinsteinSpec{j.at("omega").get<double>()};
    if (type == "discrete") {
      DiscreteSpec d;
      for (const auto& a : j.at("atoms")) d.atoms.push_back(Atom{a.at("weight").get<double>(), a.at("omega").get<double>()});
      return d;
    }
    if (type == "tabulated") {
      TabulatedSpec t;
      for (const auto& node : j.at("nodes")) {
        if (!node.is_array() || node.size() != 2) throw ValidationError("measure: tabulated nodes are [omega, density] pairs");
        t.nodes.push_back(DensityNode{node[0].get<double>(), node[1].get<double>()});
      }
      return t;
    }
    throw ValidationError("measure: unknown type \"" + type + "\" (expected einstein, discrete or tabulated)");
  } catch (const json::exception& e) {
    throw ValidationError(std::string("measure: ") + e.what());
  }
}

inline SpectralMeasure parse_measure(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("measure: malformed JSON: ") + e.what());
  }
  return validate(measure_spec_from_json(j));
}

inline SpectralMeasure load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read measure file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_measure(text.str());
}

inline json to_json(const SpectralMeasure& m) {
  const MeasureSpec spec = m.spec();
  if (const auto* e = std::get_if<EinsteinSpec>(&spec)) return {{"type", "einstein"}, {"omega", e->omega}};
  if (const auto* d = std::get_if<DiscreteSpec>(&spec)) {
    json atoms = json::array();
    for (const Atom& a : d->atoms) atoms.push_back({{"weight", a.weight}, {"omega", a.omega}});
    return {{"type", "discrete"}, {"atoms", atoms}};
  }
  json nodes = json::array();
  for (const DensityNode& n : std::get<TabulatedSpec>(spec).nodes) nodes.push_back({n.omega, n.density});
  return {{"type", "tabulated"}, {"nodes", nodes}};
}

}  // namespace eliashberg::io
