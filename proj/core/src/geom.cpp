#include "regsimplex/geom.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <nlohmann/json.hpp>

#include "regsimplex/errors.hpp"
#include "regsimplex/seeding.hpp"

namespace regsimplex::geom {

namespace {

// Grid resolution for sampled weights: numerators over kGridDen * box.den.
constexpr long kGridDen = 8;

// A raw weight vector is rejected when its sum is this close to zero; renormalizing
// it would throw the point far outside the sampling box.
const Rational kMinWeightSum(1, 2);

}  // namespace

BarycentricPoint BarycentricPoint::from_weights(RationalVector weights) {
  if (weights.empty()) throw DomainError("barycentric point needs at least one weight");
  Rational sum = 0;
  for (const auto& w : weights) sum += w;
  if (sum != 1) throw DomainError("barycentric weights must sum to 1, got " + to_string(sum));
  return BarycentricPoint(std::move(weights));
}

BarycentricPoint BarycentricPoint::vertex(int vertex_count, int j) {
  if (vertex_count < 1 || j < 0 || j >= vertex_count) throw DomainError("vertex index out of range");
  RationalVector w(static_cast<std::size_t>(vertex_count), Rational(0));
  w[static_cast<std::size_t>(j)] = 1;
  return BarycentricPoint(std::move(w));
}

BarycentricPoint BarycentricPoint::centroid(int vertex_count) {
  if (vertex_count < 1) throw DomainError("vertex count must be positive");
  return BarycentricPoint(RationalVector(static_cast<std::size_t>(vertex_count), Rational(1, vertex_count)));
}

DistanceSample DistanceSample::exact(RationalVector squared) {
  for (const auto& s : squared) {
    if (sgn(s) < 0) throw DomainError("squared distances must be non-negative");
  }
  DistanceSample out;
  out.mode = Mode::exact;
  out.squared = std::move(squared);
  return out;
}

DistanceSample DistanceSample::floating(std::vector<double> lengths) {
  for (double t : lengths) {
    if (!(t >= 0.0)) throw DomainError("distances must be non-negative");
  }
  DistanceSample out;
  out.mode = Mode::floating;
  out.lengths = std::move(lengths);
  return out;
}

std::vector<double> DistanceSample::to_lengths() const {
  if (mode == Mode::floating) return lengths;
  std::vector<double> t;
  t.reserve(squared.size());
  for (const auto& s : squared) t.push_back(std::sqrt(to_double(s)));
  return t;
}

EmbeddedSimplex build_embedded_simplex(int d, const Rational& edge_sq) {
  if (d < 1) throw DomainError("simplex dimension must be >= 1, got " + std::to_string(d));
  if (sgn(edge_sq) <= 0) throw DomainError("squared edge length must be positive, got " + to_string(edge_sq));
  return EmbeddedSimplex(d, edge_sq);
}

RationalVector squared_distances(const EmbeddedSimplex& s, const BarycentricPoint& p) {
  const auto n = static_cast<std::size_t>(s.dim() + 1);
  if (p.size() != n) {
    throw DomainError("expected " + std::to_string(n) + " barycentric weights, got " + std::to_string(p.size()));
  }
  // |w - e_j|^2 = sum_i w_i^2 - 2 w_j + 1
  Rational norm_sq = 0;
  for (const auto& w : p.weights()) norm_sq += w * w;
  const Rational half_edge_sq = s.edge_sq() / 2;
  RationalVector out;
  out.reserve(n);
  for (const auto& w : p.weights()) {
    Rational v = half_edge_sq * (norm_sq - 2 * w + 1);
    out.push_back(std::move(v));
  }
  return out;
}

double circumradius(int d, double edge) {
  return edge * std::sqrt(static_cast<double>(d) / (2.0 * (d + 1)));
}

CartesianSimplex build_cartesian_simplex(int d, double edge) {
  if (d < 1) throw DomainError("simplex dimension must be >= 1, got " + std::to_string(d));
  if (!(edge > 0.0) || !std::isfinite(edge)) throw DomainError("edge length must be positive and finite");

  const auto dim = static_cast<std::size_t>(d);
  std::vector<Point> vertices;
  vertices.reserve(dim + 1);
  vertices.emplace_back(dim, 0.0);

  // Vertex k+1 sits above the centroid of the regular k-1 simplex on the first k vertices,
  // at height sqrt(a^2 - R_{k-1}^2) along coordinate k.
  Point centroid(dim, 0.0);
  for (std::size_t k = 1; k <= dim; ++k) {
    const double r = circumradius(static_cast<int>(k) - 1, edge);
    Point v = centroid;
    v[k - 1] = std::sqrt(edge * edge - r * r);
    for (std::size_t i = 0; i < dim; ++i) {
      centroid[i] = (centroid[i] * static_cast<double>(k) + v[i]) / static_cast<double>(k + 1);
    }
    vertices.push_back(std::move(v));
  }
  return CartesianSimplex(d, edge, std::move(vertices));
}

Point CartesianSimplex::centroid() const {
  Point c(static_cast<std::size_t>(dim_), 0.0);
  for (const auto& v : vertices_) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += v[i];
  }
  for (auto& x : c) x /= static_cast<double>(vertices_.size());
  return c;
}

double CartesianSimplex::circumradius() const { return geom::circumradius(dim_, edge_); }

std::vector<double> distances(const CartesianSimplex& s, std::span<const double> p) {
  if (p.size() != static_cast<std::size_t>(s.dim())) {
    throw DomainError("point has " + std::to_string(p.size()) + " coordinates, simplex dimension is " +
                      std::to_string(s.dim()));
  }
  std::vector<double> t;
  t.reserve(s.vertices().size());
  for (const auto& v : s.vertices()) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += (p[i] - v[i]) * (p[i] - v[i]);
    t.push_back(std::sqrt(acc));
  }
  return t;
}

Point to_cartesian(const CartesianSimplex& s, const BarycentricPoint& p) {
  if (p.size() != s.vertices().size()) throw DomainError("barycentric arity does not match the simplex");
  Point x(static_cast<std::size_t>(s.dim()), 0.0);
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double w = to_double(p.weights()[j]);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += w * s.vertices()[j][i];
  }
  return x;
}

std::vector<BarycentricSample> sample_points(const EmbeddedSimplex& s, const SampleConfig& cfg) {
  if (cfg.count < 1) throw DomainError("sample count must be >= 1");
  if (sgn(cfg.box) <= 0) throw DomainError("sampling box must be positive");

  const mpz_class grid_den = cfg.box.get_den() * kGridDen;
  const mpz_class grid_num = cfg.box.get_num() * kGridDen;
  if (!grid_num.fits_slong_p() || !grid_den.fits_slong_p()) throw DomainError("sampling box is too fine");
  const long max_num = grid_num.get_si();
  const long den = grid_den.get_si();
  const auto n = static_cast<std::size_t>(s.dim() + 1);

  std::vector<BarycentricSample> out;
  out.reserve(static_cast<std::size_t>(cfg.count));
  for (int k = 0; k < cfg.count; ++k) {
    boost::random::mt19937_64 gen(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
    boost::random::uniform_int_distribution<long> pick(-max_num, max_num);
    RationalVector w(n);
    Rational sum;
    do {
      sum = 0;
      for (auto& wi : w) {
        wi = Rational(pick(gen), den);
        wi.canonicalize();
        sum += wi;
      }
    } while (abs(sum) < kMinWeightSum);
    for (auto& wi : w) wi /= sum;

    auto point = BarycentricPoint::from_weights(std::move(w));
    auto sq = squared_distances(s, point);
    out.push_back({std::move(point), DistanceSample::exact(std::move(sq))});
  }
  return out;
}

std::vector<Point> sample_circumsphere(const CartesianSimplex& s, const SampleConfig& cfg) {
  if (s.dim() < 2) throw DomainError("circumsphere sampling needs d >= 2 (for d = 1 the sphere is the two vertices)");
  if (cfg.count < 1) throw DomainError("sample count must be >= 1");

  const Point c = s.centroid();
  const double radius = s.circumradius();
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(cfg.count));
  for (int k = 0; k < cfg.count; ++k) {
    boost::random::mt19937_64 gen(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
    boost::random::normal_distribution<double> normal;
    Point g(c.size());
    double norm = 0.0;
    do {
      norm = 0.0;
      for (auto& x : g) {
        x = normal(gen);
        norm += x * x;
      }
      norm = std::sqrt(norm);
    } while (norm < 1e-8);
    Point p(c.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = c[i] + radius * g[i] / norm;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<double> circle_distance_profile(const Point2& center, double radius, const Point2& external, int n) {
  if (n < 3) throw DomainError("profile needs n >= 3");
  if (!(radius > 0.0)) throw DomainError("circle radius must be positive");
  const double dx = external[0] - center[0];
  const double dy = external[1] - center[1];
  const double b = std::hypot(dx, dy);
  if (b == 0.0) throw DomainError("external point projects onto the circle's center");

  const Point2 u{dx / b, dy / b};
  const Point2 perp{-u[1], u[0]};
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double theta = std::numbers::pi * k / (n - 1);
    const double px = center[0] + radius * (std::cos(theta) * u[0] + std::sin(theta) * perp[0]);
    const double py = center[1] + radius * (std::cos(theta) * u[1] + std::sin(theta) * perp[1]);
    out.push_back(std::hypot(external[0] - px, external[1] - py));
  }
  return out;
}

namespace {

nlohmann::json rationals_json(const RationalVector& v) {
  auto arr = nlohmann::json::array();
  for (const auto& q : v) arr.push_back(to_string(q));
  return arr;
}

}  // namespace

void to_json(nlohmann::json& j, const BarycentricPoint& p) { j = nlohmann::json{{"weights", rationals_json(p.weights())}}; }

void to_json(nlohmann::json& j, const DistanceSample& s) {
  if (s.mode == DistanceSample::Mode::exact) {
    j = nlohmann::json{{"mode", "exact"}, {"squared", rationals_json(s.squared)}};
  } else {
    j = nlohmann::json{{"mode", "float"}, {"distances", s.lengths}};
  }
}

void to_json(nlohmann::json& j, const BarycentricSample& s) {
  j = nlohmann::json{{"point", s.point}, {"distances", s.distances}};
}

}  // namespace regsimplex::geom
