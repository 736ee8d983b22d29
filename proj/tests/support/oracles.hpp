#pragma once

// Reference computations for tests. Each one follows a different route from the library:
// permutation expansion instead of elimination, closed forms instead of polynomial objects,
// explicit coordinates instead of the embedded representation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "regsimplex/poly.hpp"
#include "regsimplex/rational.hpp"

namespace oracle {

using regsimplex::Rational;
using Matrix = std::vector<std::vector<Rational>>;

// Canonical n/d (mpq_class(n, d) alone does not reduce).
inline Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Leibniz expansion over all permutations.
inline Rational leibniz_det(const Matrix& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    Rational term = inversions % 2 == 0 ? 1 : -1;
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= m[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline Rational bordered_det(const Matrix& squared) {
  const std::size_t n = squared.size();
  Matrix b(n + 1, std::vector<Rational>(n + 1, Rational(1)));
  b[0][0] = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) b[i + 1][j + 1] = squared[i][j];
  }
  return leibniz_det(b);
}

// (d+1)(a^4 + sum s_j^2) - (a^2 + sum s_j)^2 with s_j = t_j^2.
inline Rational relation_on_squares(int d, const Rational& edge_sq, std::span<const Rational> squares) {
  Rational fourth = edge_sq * edge_sq;
  Rational second = edge_sq;
  for (const auto& s : squares) {
    fourth += s * s;
    second += s;
  }
  return (d + 1) * fourth - second * second;
}

inline double relation_float(int d, double a, std::span<const double> t) {
  double fourth = std::pow(a, 4);
  double second = a * a;
  for (double x : t) {
    fourth += std::pow(x, 4);
    second += x * x;
  }
  return (d + 1) * fourth - second * second;
}

// (a^2/2) * |w - e_j|^2 straight from the embedding (a/sqrt 2) e_i.
inline Rational embedded_squared_distance(const Rational& edge_sq, std::span<const Rational> w, std::size_t j) {
  Rational acc = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Rational diff = w[i] - Rational(i == j ? 1 : 0);
    acc += diff * diff;
  }
  return edge_sq / 2 * acc;
}

// Closed form for the regular simplex: a^d / d! * sqrt((d+1) / 2^d).
inline double regular_simplex_volume(int d, double a) {
  double fact = 1.0;
  for (int k = 2; k <= d; ++k) fact *= k;
  return std::pow(a, d) / fact * std::sqrt((d + 1) / std::pow(2.0, d));
}

// |det(v_1 - v_0, ..., v_d - v_0)| / d! by Gaussian elimination in long double.
inline double coordinate_volume(const std::vector<std::vector<double>>& vertices) {
  const std::size_t d = vertices.size() - 1;
  std::vector<std::vector<long double>> m(d, std::vector<long double>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) m[i][k] = vertices[i + 1][k] - vertices[0][k];
  }
  long double det = 1.0L;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < d; ++r) {
      if (std::fabs(m[r][c]) > std::fabs(m[p][c])) p = r;
    }
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < d; ++r) {
      const long double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < d; ++k) m[r][k] -= f * m[c][k];
    }
  }
  long double fact = 1.0L;
  for (std::size_t k = 2; k <= d; ++k) fact *= static_cast<long double>(k);
  return static_cast<double>(std::fabs(det) / fact);
}

inline double euclid(std::span<const double> p, std::span<const double> q) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += (p[i] - q[i]) * (p[i] - q[i]);
  return std::sqrt(acc);
}

inline std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

// Random polynomial with small integer-over-small-denominator coefficients.
inline regsimplex::poly::MultiPoly random_poly(std::mt19937_64& gen, std::size_t arity, int max_degree, int terms) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  std::uniform_int_distribution<std::size_t> var(0, arity - 1);
  regsimplex::poly::MultiPoly p(arity);
  for (int k = 0; k < terms; ++k) {
    regsimplex::poly::Exponent e(arity, 0);
    const int total = deg(gen);
    for (int i = 0; i < total; ++i) ++e[var(gen)];
    p.add_term(e, q(num(gen), den(gen)));
  }
  return p;
}

inline std::vector<Rational> random_rationals(std::mt19937_64& gen, std::size_t n) {
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 7);
  std::vector<Rational> v;
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back(q(num(gen), den(gen)));
  }
  return v;
}

}  // namespace oracle
