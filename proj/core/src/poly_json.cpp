#include "regsimplex/poly_json.hpp"

#include <string>
#include <vector>

#include "regsimplex/errors.hpp"

namespace regsimplex::poly {

nlohmann::json poly_to_json(const MultiPoly& p, std::span<const std::string> names) {
  std::vector<std::string> vars(names.begin(), names.end());
  if (vars.size() != p.arity()) vars = default_names(p.arity());

  auto terms = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back({{"coeff", regsimplex::to_string(c)}, {"exps", e}});
  }
  return {{"vars", vars}, {"terms", std::move(terms)}};
}

MultiPoly poly_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("polynomial document must be a JSON object");
  if (!j.contains("vars") || !j["vars"].is_array()) throw ParseError("polynomial document needs a \"vars\" array");
  if (!j.contains("terms") || !j["terms"].is_array()) throw ParseError("polynomial document needs a \"terms\" array");
  for (const auto& v : j["vars"]) {
    if (!v.is_string()) throw ParseError("\"vars\" entries must be strings");
  }

  const std::size_t arity = j["vars"].size();
  MultiPoly p(arity);
  const auto& terms = j["terms"];
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    const std::string where = "term " + std::to_string(i) + ": ";
    if (!t.is_object()) throw ParseError(where + "must be an object");
    if (!t.contains("coeff") || !t["coeff"].is_string()) throw ParseError(where + "\"coeff\" must be a \"p/q\" string");
    if (!t.contains("exps") || !t["exps"].is_array()) throw ParseError(where + "\"exps\" must be an array");
    const auto& exps = t["exps"];
    if (exps.size() != arity) {
      throw ParseError(where + "has " + std::to_string(exps.size()) + " exponents, expected " + std::to_string(arity));
    }
    Exponent e;
    e.reserve(arity);
    for (const auto& x : exps) {
      if (!x.is_number_integer() || x.get<long long>() < 0 || x.get<long long>() > 1'000'000) {
        throw ParseError(where + "exponents must be non-negative integers");
      }
      e.push_back(x.get<int>());
    }
    Rational c;
    try {
      c = parse_rational(t["coeff"].get<std::string>());
    } catch (const ParseError& err) {
      throw ParseError(where + err.what());
    }
    p.add_term(e, c);
  }
  return p;
}

}  // namespace regsimplex::poly
