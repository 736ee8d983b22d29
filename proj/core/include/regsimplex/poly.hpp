#pragma once

// Exact multivariate polynomials over Q, plus the named polynomials of the regular-simplex
// distance relation:
//
//   F  = (d+1)(a^4 + sum T_j^4) - (a^2 + sum T_j^2)^2              in T_1..T_{d+1}
//   F0 = (d+1)(sum_{j>=0} T_j^4) - (sum_{j>=0} T_j^2)^2             in T_0..T_{d+1}
//   G  = sum T_j^2 - d a^2,   H = sum T_j^4 - d a^4                 (circumsphere)
//
// Variables are indexed from 0 in code. For F, G, H index j holds T_{j+1}; for the
// homogeneous F0 index 0 holds T_0. The edge length only ever enters through a^2.

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "regsimplex/rational.hpp"

namespace regsimplex::poly {

using Exponent = std::vector<int>;

// Graded lexicographic order, ascending: lower total degree first, then lexicographic with
// T_1 > T_2 > ... (so within degree 1 the order is T_n, ..., T_1).
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

int exponent_degree(const Exponent& e);

class MultiPoly {
 public:
  using TermMap = std::map<Exponent, Rational, GrlexLess>;

  explicit MultiPoly(std::size_t arity = 0) : arity_(arity) {}

  static MultiPoly constant(std::size_t arity, const Rational& c);
  static MultiPoly variable(std::size_t arity, std::size_t index);
  static MultiPoly monomial(std::size_t arity, Exponent e, const Rational& c = 1);

  std::size_t arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Exponent& e) const;
  // Adds c * x^e, dropping the term if the coefficient cancels to zero.
  void add_term(const Exponent& e, const Rational& c);

  // -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(std::size_t var) const;

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& c);

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

 private:
  void check_exponent(const Exponent& e) const;

  std::size_t arity_;
  TermMap terms_;
};

MultiPoly operator+(MultiPoly a, const MultiPoly& b);
MultiPoly operator-(MultiPoly a, const MultiPoly& b);
MultiPoly operator-(MultiPoly a);
MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator*(MultiPoly a, const Rational& c);
MultiPoly operator*(const Rational& c, MultiPoly a);

MultiPoly add(const MultiPoly& p, const MultiPoly& q);
MultiPoly mul(const MultiPoly& p, const MultiPoly& q);
MultiPoly scale(const MultiPoly& p, const Rational& c);
MultiPoly pow(const MultiPoly& p, unsigned k);
int total_degree(const MultiPoly& p);

Rational eval(const MultiPoly& p, std::span<const Rational> point);
double eval_float(const MultiPoly& p, std::span<const double> point);

bool has_only_even_exponents(const MultiPoly& p);
// Evaluates p at T_j = sqrt(squares[j]) exactly; p must contain only even exponents.
Rational eval_on_squares(const MultiPoly& p, std::span<const Rational> squares);

// Coefficient of var^power when p is read as a polynomial in `var`; same arity, with the
// var exponent of every term zero.
MultiPoly coefficient_in(const MultiPoly& p, std::size_t var, int power);

// Renames variable i to perm[i].
MultiPoly permute_variables(const MultiPoly& p, std::span<const std::size_t> perm);

// Substitutes var := value and removes the variable (arity drops by one).
MultiPoly substitute(const MultiPoly& p, std::size_t var, const Rational& value);
// Substitutes var^2 := value_sq; every exponent of var must be even.
MultiPoly substitute_square(const MultiPoly& p, std::size_t var, const Rational& value_sq);

struct DivisionResult {
  MultiPoly quotient;
  MultiPoly remainder;
};

// Division of g by `divisor` as univariate polynomials in `var` with coefficients in the
// other variables. The leading coefficient of the divisor in `var` must be a nonzero
// constant, so the division is exact over Q[other vars] and the result unique:
// g = q * divisor + r with deg_var(r) < deg_var(divisor).
DivisionResult divide_in_variable(const MultiPoly& g, const MultiPoly& divisor, std::size_t var);

MultiPoly build_F(int d, const Rational& edge_sq);
MultiPoly build_homogeneous_F(int d);
MultiPoly build_G(int d, const Rational& edge_sq);
MultiPoly build_H(int d, const Rational& edge_sq);

// Divides by F in T_{d+1}, where F has the constant leading coefficient d.
// remainder == 0 exactly when g is in the ideal generated by F.
DivisionResult divide_by_F(const MultiPoly& g, int d, const Rational& edge_sq);

// d = 1 with rational edge a: the four linear factors
// (T1+T2+a), (T1+T2-a), (T1-T2+a), (T1-T2-a).
std::array<MultiPoly, 4> line_factors(const Rational& edge);
// (T1+T2-a)(T1-T2+a)(T1-T2-a): generates the vanishing ideal of the distance map for d = 1.
MultiPoly build_line_generator(const Rational& edge);
// True iff build_F(1, a^2) equals the product of the four linear factors.
bool verify_d1_factorization(const Rational& edge);

// Both sides of (d+1) H = F + ((d+1) a^2 + G)^2 - (d+1)^2 a^4.
std::pair<MultiPoly, MultiPoly> circumsphere_identity_sides(int d, const Rational& edge_sq);
bool verify_circumsphere_identity(int d, const Rational& edge_sq);

// Membership in the ideal <G, F> = <G, H> of the circumsphere, d >= 2.
// g is reduced modulo G (monic of degree 2 in T_{d+1}) to r0 + r1 T_{d+1}; H reduces to H'
// in T_1..T_d only, whose leading coefficient in T_d is the constant 2. Since Q[T]/(G) is
// free over Q[T_1..T_d] with basis {1, T_{d+1}}, g is a member iff H' divides r0 and r1.
struct SphereReduction {
  MultiPoly constant_part;    // r0
  MultiPoly linear_part;      // r1
  MultiPoly constant_residue; // r0 mod H'
  MultiPoly linear_residue;   // r1 mod H'
  bool member = false;
};
SphereReduction reduce_modulo_sphere_ideal(const MultiPoly& g, int d, const Rational& edge_sq);

// Human-readable form, e.g. "2*T1^2*T3 - 1/3".
std::string to_string(const MultiPoly& p, std::span<const std::string> names = {});

// Default variable names T1..Tn, or T0..T_{n-1} when `from_zero`.
std::vector<std::string> default_names(std::size_t arity, bool from_zero = false);

}  // namespace regsimplex::poly
