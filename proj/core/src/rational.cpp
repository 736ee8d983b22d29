#include "regsimplex/rational.hpp"

#include <cmath>
#include <string>

#include "regsimplex/errors.hpp"

namespace regsimplex {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);

  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
    throw ParseError("not a rational literal: '" + std::string(text) + "'");
  }
  if (num.front() == '+') num.remove_prefix(1);

  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

double to_double(const Rational& q) { return q.get_d(); }

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) {
    return std::nullopt;
  }
  mpz_class n = sqrt(q.get_num());
  mpz_class d = sqrt(q.get_den());
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Rational best_rational(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw DomainError("best_rational: non-finite input");
  if (max_den < 1) throw DomainError("best_rational: max_den must be >= 1");

  // Doubles are dyadic rationals, so the conversion is exact.
  Rational exact(x);
  const mpz_class limit(static_cast<long>(max_den));
  if (exact.get_den() <= limit) return exact;

  const bool negative = sgn(exact) < 0;
  if (negative) exact = -exact;

  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  mpz_class n = exact.get_num();
  mpz_class d = exact.get_den();
  while (true) {
    mpz_class a = n / d;
    mpz_class q2 = q0 + a * q1;
    if (q2 > limit) break;
    mpz_class p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    mpz_class r = n - a * d;
    n = d;
    d = r;
    if (d == 0) break;
  }

  Rational best(p1, q1);
  if (d != 0) {
    mpz_class k = (limit - q0) / q1;
    Rational semi(p0 + k * p1, q0 + k * q1);
    semi.canonicalize();
    best.canonicalize();
    if (abs(semi - exact) < abs(best - exact)) best = semi;
  }
  best.canonicalize();
  return negative ? Rational(-best) : best;
}

}  // namespace regsimplex
