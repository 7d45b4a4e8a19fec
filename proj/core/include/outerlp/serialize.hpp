#pragma once

#include <string>

#include "json.hpp"
#include "outerlp/decomposition.hpp"
#include "outerlp/finite_space.hpp"

namespace outerlp {

// Structured-text forms. Spaces: {"points": n, "weights": [...], and either
// "generators": [{"set": [ids], "sigma": v}] or "table": [{"set": [ids],
// "mu": v}]}. Functions: {"values": [...]} aligned with point order.
// Decompositions: [{"k": level, "set": [ids]}]. Extended-real values are
// emitted as the literal string "inf"; NaN is rejected. Malformed documents
// throw ConfigParse.
nlohmann::json space_to_json(const FiniteOuterSpace& space);
FiniteOuterSpace space_from_json(const nlohmann::json& doc);

nlohmann::json function_to_json(const PointFunction& f);
PointFunction function_from_json(const nlohmann::json& doc, int expected_points = -1);

nlohmann::json decomposition_to_json(const Decomposition& dec);
Decomposition decomposition_from_json(const nlohmann::json& doc);

// scalar helpers shared with the CSV/JSON emitters: finite numbers stay
// numbers, +inf becomes "inf"
nlohmann::json number_to_json(double v);
double number_from_json(const nlohmann::json& v);

}  // namespace outerlp
