#include "outerlp/serialize.hpp"

#include <cmath>
#include <limits>

namespace outerlp {

namespace {

using nlohmann::json;

std::vector<int> mask_to_ids(Mask m) {
  std::vector<int> ids;
  for (int x = 0; x < 32; ++x)
    if (m & (Mask(1) << x)) ids.push_back(x);
  return ids;
}

Mask ids_to_mask(const json& arr, int n) {
  if (!arr.is_array()) throw ConfigParse("set must be an array of point ids");
  Mask m = 0;
  for (const auto& v : arr) {
    if (!v.is_number_integer()) throw ConfigParse("point id must be an integer");
    int x = v.get<int>();
    if (x < 0 || x >= n) throw ConfigParse("point id out of range");
    m |= Mask(1) << x;
  }
  return m;
}

}  // namespace

json number_to_json(double v) {
  if (std::isnan(v)) throw ConfigParse("NaN has no serialized form");
  if (std::isinf(v)) return json("inf");
  return json(v);
}

double number_from_json(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw ConfigParse("unrecognized numeric literal: " + v.get<std::string>());
  }
  if (!v.is_number()) throw ConfigParse("expected a number or \"inf\"");
  double x = v.get<double>();
  if (std::isnan(x)) throw ConfigParse("NaN has no serialized form");
  return x;
}

json space_to_json(const FiniteOuterSpace& space) {
  json doc;
  doc["points"] = space.size();
  doc["weights"] = json::array();
  for (double w : space.weights()) doc["weights"].push_back(number_to_json(w));
  if (space.has_generators()) {
    json gens = json::array();
    for (const auto& gen : space.generators())
      gens.push_back({{"set", mask_to_ids(gen.set)}, {"sigma", number_to_json(gen.sigma)}});
    doc["generators"] = gens;
  } else {
    json table = json::array();
    for (Mask m = 0;; ++m) {
      table.push_back(
          {{"set", mask_to_ids(m)}, {"mu", number_to_json(space.outer_measure(m).value())}});
      if (m == space.all()) break;
    }
    doc["table"] = table;
  }
  return doc;
}

FiniteOuterSpace space_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("points") || !doc.contains("weights"))
    throw ConfigParse("space document needs points and weights");
  if (!doc["points"].is_number_integer()) throw ConfigParse("points must be an integer");
  int n = doc["points"].get<int>();
  if (n < 1 || n > kMaxPoints) throw ConfigParse("point count out of range");
  if (!doc["weights"].is_array() || int(doc["weights"].size()) != n)
    throw ConfigParse("weights must list one value per point");
  std::vector<double> weights;
  for (const auto& w : doc["weights"]) weights.push_back(number_from_json(w));

  if (doc.contains("generators")) {
    Generators gens;
    for (const auto& entry : doc["generators"]) {
      if (!entry.is_object() || !entry.contains("set") || !entry.contains("sigma"))
        throw ConfigParse("generator needs set and sigma");
      gens.items.push_back({ids_to_mask(entry["set"], n), number_from_json(entry["sigma"])});
    }
    return build_space(std::move(weights), std::move(gens));
  }
  if (doc.contains("table")) {
    ExplicitTable table;
    table.mu.assign(std::size_t(1) << n, -1.0);
    for (const auto& entry : doc["table"]) {
      if (!entry.is_object() || !entry.contains("set") || !entry.contains("mu"))
        throw ConfigParse("table entry needs set and mu");
      table.mu[ids_to_mask(entry["set"], n)] = number_from_json(entry["mu"]);
    }
    for (double v : table.mu)
      if (v < 0.0) throw ConfigParse("table must list every subset exactly once");
    return build_space(std::move(weights), std::move(table));
  }
  throw ConfigParse("space document needs generators or table");
}

json function_to_json(const PointFunction& f) {
  json doc;
  doc["values"] = json::array();
  for (double v : f.values) doc["values"].push_back(number_to_json(v));
  return doc;
}

PointFunction function_from_json(const json& doc, int expected_points) {
  if (!doc.is_object() || !doc.contains("values") || !doc["values"].is_array())
    throw ConfigParse("function document needs a values array");
  PointFunction f;
  for (const auto& v : doc["values"]) {
    double x = number_from_json(v);
    if (x < 0.0) throw ConfigParse("function values must be nonnegative");
    f.values.push_back(x);
  }
  if (expected_points >= 0 && int(f.values.size()) != expected_points)
    throw ConfigParse("function length does not match the space");
  return f;
}

json decomposition_to_json(const Decomposition& dec) {
  json doc = json::array();
  for (const auto& [k, set] : dec.levels)
    if (set != 0) doc.push_back({{"k", k}, {"set", mask_to_ids(set)}});
  return doc;
}

Decomposition decomposition_from_json(const json& doc) {
  if (!doc.is_array()) throw ConfigParse("decomposition must be an array of levels");
  Decomposition dec;
  bool first = true;
  for (const auto& entry : doc) {
    if (!entry.is_object() || !entry.contains("k") || !entry.contains("set"))
      throw ConfigParse("decomposition level needs k and set");
    if (!entry["k"].is_number_integer()) throw ConfigParse("level k must be an integer");
    int k = entry["k"].get<int>();
    dec.levels[k] = ids_to_mask(entry["set"], kMaxPoints);
    dec.k_max = first ? k + 1 : std::max(dec.k_max, k + 1);
    dec.k_min = first ? k : std::min(dec.k_min, k);
    first = false;
  }
  return dec;
}

}  // namespace outerlp
