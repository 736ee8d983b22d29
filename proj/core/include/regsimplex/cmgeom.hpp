#pragma once

// Cayley-Menger determinants, simplex volumes from squared edge lengths, and point
// reconstruction from distances to the vertices of a regular simplex.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "regsimplex/geom.hpp"
#include "regsimplex/rational.hpp"

namespace regsimplex::cmgeom {

using geom::Point;

// Symmetric, zero diagonal, non-negative entries. Scalar is Rational or double.
template <typename Scalar>
class SquaredDistanceMatrix {
 public:
  static SquaredDistanceMatrix from_rows(std::vector<std::vector<Scalar>> rows);
  // `count` points at mutual squared distance `value`.
  static SquaredDistanceMatrix uniform(std::size_t count, const Scalar& value);

  std::size_t size() const { return rows_.size(); }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  const std::vector<std::vector<Scalar>>& rows() const { return rows_; }

 private:
  explicit SquaredDistanceMatrix(std::vector<std::vector<Scalar>> rows) : rows_(std::move(rows)) {}
  std::vector<std::vector<Scalar>> rows_;
};

using ExactDistanceMatrix = SquaredDistanceMatrix<Rational>;
using FloatDistanceMatrix = SquaredDistanceMatrix<double>;

extern template class SquaredDistanceMatrix<Rational>;
extern template class SquaredDistanceMatrix<double>;

// det [[0, 1^T], [1, M]]. The exact version clears denominators and runs fraction-free
// (Bareiss) elimination over the integers; the float version uses partial-pivot LU.
Rational cayley_menger_det(const ExactDistanceMatrix& m);
double cayley_menger_det(const FloatDistanceMatrix& m);

// Volume of the simplex spanned by the n = d+1 points:
//   V^2 = (-1)^(d+1) / (2^d (d!)^2) * CM.
// Throws InfeasibleError when the determinant has the wrong sign.
double simplex_volume(const FloatDistanceMatrix& m);
double simplex_volume(const ExactDistanceMatrix& m);

struct RelationVsCm {
  Rational relation_value;  // F(t_1, ..., t_{d+1}) evaluated through the squares
  Rational cm_value;        // CM determinant of the d+1 vertices plus the point
};

// Both quantities vanish exactly when squared_t comes from a point of the simplex's hull.
RelationVsCm relation_vs_cm(int d, const Rational& edge_sq, std::span<const Rational> squared_t);

struct Trilateration {
  Point point;
  double residual = 0.0;  // | |x - anchors[0]|^2 - squared_distances[0] |
};

// Subtracts the sphere equation of anchors[0] from the others and solves the resulting
// (count-1) x dim linear system. Needs dim+1 affinely independent anchors.
Trilateration trilaterate(std::span<const Point> anchors, std::span<const double> squared_distances);

enum class Feasibility { feasible, infeasible };

struct ReconstructionResult {
  Feasibility status = Feasibility::infeasible;
  Point point;
  double residual = 0.0;
  double tolerance = 0.0;
};

// tol defaults to 1e-9 * a^2.
ReconstructionResult reconstruct_point(const geom::CartesianSimplex& s, std::span<const double> t,
                                       std::optional<double> tol = std::nullopt);

// F = 0 read as a quadratic in s = t_{d+1}^2 given t_1..t_d:
//   d s^2 - 2 P s + ((d+1) Q - P^2) = 0,  P = a^2 + sum t_j^2,  Q = a^4 + sum t_j^4.
// Returns the real non-negative roots in ascending order.
std::vector<double> last_squared_distance_roots(int d, double edge_sq, std::span<const double> t_first);

struct ExactLastSquared {
  Rational quarter_discriminant;      // P^2 - d ((d+1) Q - P^2)
  std::vector<Rational> exact_roots;  // when the discriminant is a rational square
  std::vector<double> roots;          // real non-negative roots, ascending
};

ExactLastSquared last_squared_distance_roots_exact(int d, const Rational& edge_sq,
                                                   std::span<const Rational> squares_first);

struct ProbeConfig {
  int d = 2;
  Rational edge_sq = 1;
  int trials = 1000;
  std::uint64_t seed = 1;
  std::optional<double> tol;
};

struct ProbeTrial {
  std::vector<double> t_first;  // t_1..t_d, log-uniform in [a/10, 10a]
  std::vector<double> roots;    // candidate t_{d+1}^2
  std::vector<ReconstructionResult> verdicts;  // one per root
};

struct ProbeReport {
  ProbeConfig config;
  std::vector<ProbeTrial> trials;
  int no_real_root = 0;  // trials
  int feasible = 0;      // roots
  int infeasible = 0;    // roots
};

// Do positive tuples satisfying F = 0 always come from a point? Gathers evidence only.
ProbeReport probe_realizability(const ProbeConfig& cfg);

void to_json(nlohmann::json& j, const ReconstructionResult& r);
void to_json(nlohmann::json& j, const ProbeReport& r);

}  // namespace regsimplex::cmgeom
