#pragma once

// Descartes' relation among the oriented curvatures k_j = +-1/r_j of d+2 mutually tangent
// spheres in d-space:  d * sum k_j^2 = (sum k_j)^2.
// Positive curvature: externally tangent; negative: the sphere encloses the others.

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "regsimplex/geom.hpp"

namespace regsimplex::soddy {

using geom::Point;

struct Sphere {
  Point center;
  double radius = 1.0;
  int orientation = 1;  // +1 external, -1 enclosing

  static Sphere make(Point center, double radius, int orientation = 1);
  double curvature() const { return orientation / radius; }
};

// Center distance two tangent spheres must have: r_i + r_j, or |r_i - r_j| for mixed orientation.
double tangent_distance(const Sphere& a, const Sphere& b);

struct TangentConfig {
  int dim = 2;
  std::vector<Sphere> spheres;
  double tolerance = 1e-9;

  // | |c_i - c_j| - tangent_distance | for every pair i < j, in pair order.
  std::vector<double> tangency_residuals() const;
  bool is_tangent() const;
};

// d * sum k^2 - (sum k)^2. Expects d+2 nonzero curvatures.
double verify_descartes(std::span<const double> curvatures, int d);

// Roots of (d-1) k^2 - 2 S1 k + (d S2 - S1^2) = 0 for the missing curvature, larger first.
// Empty when the roots are complex. Requires d >= 2 and d+1 known curvatures.
std::optional<std::pair<double, double>> solve_missing_curvature(std::span<const double> known, int d);

// Three mutually externally tangent circles: c1 at the origin, c2 on the positive x-axis,
// c3 in the upper half plane.
TangentConfig build_tangent_circles_2d(double r1, double r2, double r3);

struct SoddyCircle {
  Sphere circle;
  // | |c4 - c3| - tangent_distance(circle, circle 3) | after placing c4 from circles 1 and 2.
  double residual = 0.0;
};

// Places the fourth circle with curvature k4 (sign gives the orientation). A k4 that is not a
// Descartes root shows up as a large residual, not as an error.
SoddyCircle build_soddy_circle_2d(const TangentConfig& cfg, double k4);

void to_json(nlohmann::json& j, const Sphere& s);

}  // namespace regsimplex::soddy
