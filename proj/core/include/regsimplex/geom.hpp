#pragma once

// Regular simplices in two representations:
//
//  * EmbeddedSimplex: the vertices are (a/sqrt(2)) e_i in (d+1)-space. A point of the
//    affine hull is given by barycentric weights w, and its squared distance to vertex j
//    is (a^2/2) |w - e_j|^2, which is rational whenever a^2 and w are. Nothing irrational
//    is ever stored.
//  * CartesianSimplex: floating vertex coordinates in d-space, v1 at the origin and
//    vertex k supported on the first k-1 coordinates.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "regsimplex/rational.hpp"

namespace regsimplex::geom {

using Point = std::vector<double>;
using Point2 = std::array<double, 2>;

class EmbeddedSimplex {
 public:
  int dim() const { return dim_; }
  const Rational& edge_sq() const { return edge_sq_; }

 private:
  EmbeddedSimplex(int dim, Rational edge_sq) : dim_(dim), edge_sq_(std::move(edge_sq)) {}
  friend EmbeddedSimplex build_embedded_simplex(int d, const Rational& edge_sq);

  int dim_;
  Rational edge_sq_;
};

class CartesianSimplex {
 public:
  int dim() const { return dim_; }
  double edge() const { return edge_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const Point& vertex(int j) const { return vertices_.at(static_cast<std::size_t>(j)); }
  // Circumcenter; for a regular simplex this is the centroid.
  Point centroid() const;
  double circumradius() const;

 private:
  CartesianSimplex(int dim, double edge, std::vector<Point> vertices)
      : dim_(dim), edge_(edge), vertices_(std::move(vertices)) {}
  friend CartesianSimplex build_cartesian_simplex(int d, double edge);

  int dim_;
  double edge_;
  std::vector<Point> vertices_;
};

// Barycentric weights summing exactly to 1; negative weights reach the whole affine hull.
class BarycentricPoint {
 public:
  static BarycentricPoint from_weights(RationalVector weights);
  // The j-th vertex (0-based) of a simplex with `vertex_count` vertices.
  static BarycentricPoint vertex(int vertex_count, int j);
  static BarycentricPoint centroid(int vertex_count);

  const RationalVector& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }

 private:
  explicit BarycentricPoint(RationalVector w) : weights_(std::move(w)) {}
  RationalVector weights_;
};

struct DistanceSample {
  enum class Mode { exact, floating };

  Mode mode = Mode::exact;
  RationalVector squared;       // exact mode: s_j = t_j^2
  std::vector<double> lengths;  // floating mode: t_j

  static DistanceSample exact(RationalVector squared);
  static DistanceSample floating(std::vector<double> lengths);

  std::size_t size() const { return mode == Mode::exact ? squared.size() : lengths.size(); }
  // t_j as doubles in either mode (square roots of the exact values in exact mode).
  std::vector<double> to_lengths() const;
};

struct SampleConfig {
  std::uint64_t seed = 0;
  int count = 1;
  Rational box = 3;  // weight coordinates drawn from a grid in [-box, box]
};

struct BarycentricSample {
  BarycentricPoint point;
  DistanceSample distances;
};

EmbeddedSimplex build_embedded_simplex(int d, const Rational& edge_sq);

RationalVector squared_distances(const EmbeddedSimplex& s, const BarycentricPoint& p);

CartesianSimplex build_cartesian_simplex(int d, double edge);

std::vector<double> distances(const CartesianSimplex& s, std::span<const double> p);

// Maps barycentric weights to Cartesian coordinates: sum_j w_j v_j.
Point to_cartesian(const CartesianSimplex& s, const BarycentricPoint& p);

// a * sqrt(d / (2(d+1)))
double circumradius(int d, double edge);

// Deterministic given cfg.seed; sample k depends only on (seed, k).
std::vector<BarycentricSample> sample_points(const EmbeddedSimplex& s, const SampleConfig& cfg);

// Points on the circumsphere (uniform direction from the centroid). Requires d >= 2.
std::vector<Point> sample_circumsphere(const CartesianSimplex& s, const SampleConfig& cfg);

// Distances |B - P(theta_k)| for theta_k = k*pi/(n-1), with P running along a semicircle from
// the intersection of line AB nearest B to the antipodal one. Strictly increasing whenever
// B != A. Throws DomainError when B == A or n < 3.
std::vector<double> circle_distance_profile(const Point2& center, double radius,
                                            const Point2& external, int n);

void to_json(nlohmann::json& j, const BarycentricPoint& p);
void to_json(nlohmann::json& j, const DistanceSample& s);
void to_json(nlohmann::json& j, const BarycentricSample& s);

}  // namespace regsimplex::geom
