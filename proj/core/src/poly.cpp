#include "regsimplex/poly.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "regsimplex/errors.hpp"

namespace regsimplex::poly {

int exponent_degree(const Exponent& e) {
  int total = 0;
  for (int x : e) total += x;
  return total;
}

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
  const int da = exponent_degree(a);
  const int db = exponent_degree(b);
  if (da != db) return da < db;
  // Lex with the first variable most significant.
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void MultiPoly::check_exponent(const Exponent& e) const {
  if (e.size() != arity_) {
    throw DomainError("exponent vector of length " + std::to_string(e.size()) + " for a polynomial in " +
                      std::to_string(arity_) + " variables");
  }
  for (int x : e) {
    if (x < 0) throw DomainError("negative exponent");
  }
}

MultiPoly MultiPoly::constant(std::size_t arity, const Rational& c) {
  MultiPoly p(arity);
  p.add_term(Exponent(arity, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t arity, std::size_t index) {
  if (index >= arity) throw DomainError("variable index out of range");
  Exponent e(arity, 0);
  e[index] = 1;
  return monomial(arity, std::move(e));
}

MultiPoly MultiPoly::monomial(std::size_t arity, Exponent e, const Rational& c) {
  MultiPoly p(arity);
  p.add_term(e, c);
  return p;
}

Rational MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Exponent& e, const Rational& c) {
  check_exponent(e);
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

int MultiPoly::total_degree() const {
  // Terms are grlex-ascending, so the last one has the highest degree.
  return terms_.empty() ? -1 : exponent_degree(terms_.rbegin()->first);
}

int MultiPoly::degree_in(std::size_t var) const {
  if (var >= arity_) throw DomainError("variable index out of range");
  int best = -1;
  for (const auto& [e, c] : terms_) best = std::max(best, e[var]);
  return best;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  if (other.arity_ != arity_) throw DomainError("arity mismatch in polynomial addition");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  if (other.arity_ != arity_) throw DomainError("arity mismatch in polynomial subtraction");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
MultiPoly operator-(MultiPoly a) { return a *= Rational(-1); }
MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.arity() != b.arity()) throw DomainError("arity mismatch in polynomial multiplication");
  MultiPoly out(a.arity());
  Exponent e(a.arity());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiPoly add(const MultiPoly& p, const MultiPoly& q) { return p + q; }
MultiPoly mul(const MultiPoly& p, const MultiPoly& q) { return p * q; }
MultiPoly scale(const MultiPoly& p, const Rational& c) { return p * c; }
int total_degree(const MultiPoly& p) { return p.total_degree(); }

MultiPoly pow(const MultiPoly& p, unsigned k) {
  MultiPoly result = MultiPoly::constant(p.arity(), 1);
  MultiPoly base = p;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

namespace {

template <typename T>
std::vector<std::vector<T>> power_table(const MultiPoly& p, std::span<const T> point) {
  std::vector<std::vector<T>> powers(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    const int max_exp = std::max(p.is_zero() ? 0 : p.degree_in(i), 0);
    powers[i].reserve(static_cast<std::size_t>(max_exp) + 1);
    powers[i].push_back(T(1));
    for (int k = 1; k <= max_exp; ++k) powers[i].push_back(powers[i].back() * point[i]);
  }
  return powers;
}

void check_point_arity(const MultiPoly& p, std::size_t n) {
  if (n != p.arity()) {
    throw DomainError("evaluation point has " + std::to_string(n) + " coordinates, polynomial has " +
                      std::to_string(p.arity()) + " variables");
  }
}

}  // namespace

Rational eval(const MultiPoly& p, std::span<const Rational> point) {
  check_point_arity(p, point.size());
  const auto powers = power_table(p, point);
  Rational sum = 0;
  Rational term;
  for (const auto& [e, c] : p.terms()) {
    term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) term *= powers[i][static_cast<std::size_t>(e[i])];
    }
    sum += term;
  }
  return sum;
}

double eval_float(const MultiPoly& p, std::span<const double> point) {
  check_point_arity(p, point.size());
  const auto powers = power_table(p, point);
  double sum = 0.0;
  for (const auto& [e, c] : p.terms()) {
    double term = to_double(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) term *= powers[i][static_cast<std::size_t>(e[i])];
    }
    sum += term;
  }
  return sum;
}

bool has_only_even_exponents(const MultiPoly& p) {
  for (const auto& [e, c] : p.terms()) {
    for (int x : e) {
      if (x % 2 != 0) return false;
    }
  }
  return true;
}

Rational eval_on_squares(const MultiPoly& p, std::span<const Rational> squares) {
  check_point_arity(p, squares.size());
  if (!has_only_even_exponents(p)) throw DomainError("eval_on_squares needs a polynomial in even powers only");
  MultiPoly halved(p.arity());
  for (const auto& [e, c] : p.terms()) {
    Exponent h(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) h[i] = e[i] / 2;
    halved.add_term(h, c);
  }
  return eval(halved, squares);
}

MultiPoly coefficient_in(const MultiPoly& p, std::size_t var, int power) {
  if (var >= p.arity()) throw DomainError("variable index out of range");
  MultiPoly out(p.arity());
  for (const auto& [e, c] : p.terms()) {
    if (e[var] != power) continue;
    Exponent stripped = e;
    stripped[var] = 0;
    out.add_term(stripped, c);
  }
  return out;
}

MultiPoly permute_variables(const MultiPoly& p, std::span<const std::size_t> perm) {
  if (perm.size() != p.arity()) throw DomainError("permutation length does not match arity");
  std::vector<bool> seen(perm.size(), false);
  for (auto target : perm) {
    if (target >= perm.size() || seen[target]) throw DomainError("not a permutation");
    seen[target] = true;
  }
  MultiPoly out(p.arity());
  Exponent moved(p.arity());
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) moved[perm[i]] = e[i];
    out.add_term(moved, c);
  }
  return out;
}

namespace {

Exponent drop_index(const Exponent& e, std::size_t var) {
  Exponent out;
  out.reserve(e.size() - 1);
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i != var) out.push_back(e[i]);
  }
  return out;
}

Rational rational_pow(const Rational& base, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= base;
  return r;
}

}  // namespace

MultiPoly substitute(const MultiPoly& p, std::size_t var, const Rational& value) {
  if (var >= p.arity()) throw DomainError("variable index out of range");
  MultiPoly out(p.arity() - 1);
  for (const auto& [e, c] : p.terms()) out.add_term(drop_index(e, var), c * rational_pow(value, e[var]));
  return out;
}

MultiPoly substitute_square(const MultiPoly& p, std::size_t var, const Rational& value_sq) {
  if (var >= p.arity()) throw DomainError("variable index out of range");
  MultiPoly out(p.arity() - 1);
  for (const auto& [e, c] : p.terms()) {
    if (e[var] % 2 != 0) throw DomainError("substitute_square: odd exponent in the substituted variable");
    out.add_term(drop_index(e, var), c * rational_pow(value_sq, e[var] / 2));
  }
  return out;
}

DivisionResult divide_in_variable(const MultiPoly& g, const MultiPoly& divisor, std::size_t var) {
  if (g.arity() != divisor.arity()) throw DomainError("arity mismatch in division");
  if (divisor.is_zero()) throw DomainError("division by the zero polynomial");
  const int m = divisor.degree_in(var);
  const MultiPoly lead = coefficient_in(divisor, var, m);
  if (lead.total_degree() != 0) {
    throw DomainError("divisor's leading coefficient in the division variable is not a constant");
  }
  const Rational inv_lead = 1 / lead.terms().begin()->second;

  DivisionResult out{MultiPoly(g.arity()), g};
  while (!out.remainder.is_zero()) {
    const int k = out.remainder.degree_in(var);
    if (k < m) break;
    MultiPoly step(g.arity());
    for (const auto& [e, c] : out.remainder.terms()) {
      if (e[var] != k) continue;
      Exponent shifted = e;
      shifted[var] = k - m;
      step.add_term(shifted, c * inv_lead);
    }
    out.quotient += step;
    out.remainder -= step * divisor;
  }
  return out;
}

namespace {

void check_dim(int d, int min_d) {
  if (d < min_d) throw DomainError("dimension d must be >= " + std::to_string(min_d) + ", got " + std::to_string(d));
}

void check_edge_sq(const Rational& edge_sq) {
  if (sgn(edge_sq) <= 0) throw DomainError("squared edge length must be positive");
}

// sum_{j in [first, arity)} T_j^power
MultiPoly power_sum(std::size_t arity, std::size_t first, int power) {
  MultiPoly out(arity);
  for (std::size_t j = first; j < arity; ++j) {
    Exponent e(arity, 0);
    e[j] = power;
    out.add_term(e, 1);
  }
  return out;
}

}  // namespace

MultiPoly build_F(int d, const Rational& edge_sq) {
  check_dim(d, 1);
  check_edge_sq(edge_sq);
  const auto n = static_cast<std::size_t>(d + 1);
  const Rational edge_4 = edge_sq * edge_sq;
  const MultiPoly quartic = MultiPoly::constant(n, edge_4) + power_sum(n, 0, 4);
  const MultiPoly quadratic = MultiPoly::constant(n, edge_sq) + power_sum(n, 0, 2);
  return Rational(d + 1) * quartic - quadratic * quadratic;
}

MultiPoly build_homogeneous_F(int d) {
  check_dim(d, 1);
  const auto n = static_cast<std::size_t>(d + 2);
  const MultiPoly quadratic = power_sum(n, 0, 2);
  return Rational(d + 1) * power_sum(n, 0, 4) - quadratic * quadratic;
}

MultiPoly build_G(int d, const Rational& edge_sq) {
  check_dim(d, 2);
  check_edge_sq(edge_sq);
  const auto n = static_cast<std::size_t>(d + 1);
  return power_sum(n, 0, 2) - MultiPoly::constant(n, Rational(d) * edge_sq);
}

MultiPoly build_H(int d, const Rational& edge_sq) {
  check_dim(d, 2);
  check_edge_sq(edge_sq);
  const auto n = static_cast<std::size_t>(d + 1);
  return power_sum(n, 0, 4) - MultiPoly::constant(n, Rational(d) * edge_sq * edge_sq);
}

DivisionResult divide_by_F(const MultiPoly& g, int d, const Rational& edge_sq) {
  if (g.arity() != static_cast<std::size_t>(d + 1)) {
    throw DomainError("polynomial has " + std::to_string(g.arity()) + " variables, expected d+1 = " +
                      std::to_string(d + 1));
  }
  return divide_in_variable(g, build_F(d, edge_sq), static_cast<std::size_t>(d));
}

std::array<MultiPoly, 4> line_factors(const Rational& edge) {
  if (sgn(edge) <= 0) throw DomainError("edge length must be positive");
  const MultiPoly t1 = MultiPoly::variable(2, 0);
  const MultiPoly t2 = MultiPoly::variable(2, 1);
  const MultiPoly a = MultiPoly::constant(2, edge);
  return {t1 + t2 + a, t1 + t2 - a, t1 - t2 + a, t1 - t2 - a};
}

MultiPoly build_line_generator(const Rational& edge) {
  const auto f = line_factors(edge);
  return f[1] * f[2] * f[3];
}

bool verify_d1_factorization(const Rational& edge) {
  const auto f = line_factors(edge);
  return f[0] * f[1] * f[2] * f[3] == build_F(1, edge * edge);
}

std::pair<MultiPoly, MultiPoly> circumsphere_identity_sides(int d, const Rational& edge_sq) {
  check_dim(d, 2);
  const auto n = static_cast<std::size_t>(d + 1);
  const Rational k = d + 1;
  MultiPoly lhs = k * build_H(d, edge_sq);
  const MultiPoly shifted = MultiPoly::constant(n, k * edge_sq) + build_G(d, edge_sq);
  MultiPoly rhs = build_F(d, edge_sq) + shifted * shifted - MultiPoly::constant(n, k * k * edge_sq * edge_sq);
  return {std::move(lhs), std::move(rhs)};
}

bool verify_circumsphere_identity(int d, const Rational& edge_sq) {
  const auto [lhs, rhs] = circumsphere_identity_sides(d, edge_sq);
  return lhs == rhs;
}

SphereReduction reduce_modulo_sphere_ideal(const MultiPoly& g, int d, const Rational& edge_sq) {
  check_dim(d, 2);
  const auto n = static_cast<std::size_t>(d + 1);
  if (g.arity() != n) throw DomainError("polynomial arity does not match d+1");
  const auto last = static_cast<std::size_t>(d);

  const MultiPoly G = build_G(d, edge_sq);
  const MultiPoly h_reduced = divide_in_variable(build_H(d, edge_sq), G, last).remainder;
  const MultiPoly r = divide_in_variable(g, G, last).remainder;

  SphereReduction out;
  out.constant_part = coefficient_in(r, last, 0);
  out.linear_part = coefficient_in(r, last, 1);
  out.constant_residue = divide_in_variable(out.constant_part, h_reduced, last - 1).remainder;
  out.linear_residue = divide_in_variable(out.linear_part, h_reduced, last - 1).remainder;
  out.member = out.constant_residue.is_zero() && out.linear_residue.is_zero();
  return out;
}

std::vector<std::string> default_names(std::size_t arity, bool from_zero) {
  std::vector<std::string> names;
  names.reserve(arity);
  for (std::size_t i = 0; i < arity; ++i) names.push_back("T" + std::to_string(from_zero ? i : i + 1));
  return names;
}

std::string to_string(const MultiPoly& p, std::span<const std::string> names) {
  if (p.is_zero()) return "0";
  std::vector<std::string> fallback;
  if (names.size() != p.arity()) {
    fallback = default_names(p.arity());
    names = fallback;
  }
  std::ostringstream os;
  bool first = true;
  // Highest-degree terms first reads more naturally.
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    const bool is_const = exponent_degree(e) == 0;
    bool wrote = false;
    if (mag != 1 || is_const) {
      os << regsimplex::to_string(mag);
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << names[i];
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace regsimplex::poly
