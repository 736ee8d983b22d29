#pragma once

// Polynomial interchange format:
//
//   { "vars": ["T1", ...],
//     "terms": [ { "coeff": "p/q", "exps": [e1, ...] }, ... ] }
//
// Terms are written in ascending graded-lex order with coefficients in lowest terms.

#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "regsimplex/poly.hpp"

namespace regsimplex::poly {

nlohmann::json poly_to_json(const MultiPoly& p, std::span<const std::string> names = {});

// Throws ParseError naming the offending term index on malformed input.
MultiPoly poly_from_json(const nlohmann::json& j);

}  // namespace regsimplex::poly
