#include "regsimplex/soddy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "regsimplex/cmgeom.hpp"
#include "regsimplex/errors.hpp"

namespace regsimplex::soddy {

Sphere Sphere::make(Point center, double radius, int orientation) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("sphere radius must be positive and finite");
  if (orientation != 1 && orientation != -1) throw DomainError("orientation must be +1 or -1");
  return Sphere{std::move(center), radius, orientation};
}

double tangent_distance(const Sphere& a, const Sphere& b) {
  if (a.orientation == 1 && b.orientation == 1) return a.radius + b.radius;
  return std::abs(a.radius - b.radius);
}

namespace {

double center_distance(const Point& a, const Point& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(acc);
}

}  // namespace

std::vector<double> TangentConfig::tangency_residuals() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < spheres.size(); ++i) {
    for (std::size_t j = i + 1; j < spheres.size(); ++j) {
      out.push_back(std::abs(center_distance(spheres[i].center, spheres[j].center) -
                             tangent_distance(spheres[i], spheres[j])));
    }
  }
  return out;
}

bool TangentConfig::is_tangent() const {
  const auto r = tangency_residuals();
  return std::all_of(r.begin(), r.end(), [this](double x) { return x <= tolerance; });
}

double verify_descartes(std::span<const double> curvatures, int d) {
  if (d < 1) throw DomainError("d must be >= 1");
  if (curvatures.size() != static_cast<std::size_t>(d + 2)) {
    throw DomainError("expected d+2 = " + std::to_string(d + 2) + " curvatures, got " +
                      std::to_string(curvatures.size()));
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double k : curvatures) {
    if (k == 0.0) throw DomainError("curvatures must be nonzero");
    sum += k;
    sum_sq += k * k;
  }
  return d * sum_sq - sum * sum;
}

std::optional<std::pair<double, double>> solve_missing_curvature(std::span<const double> known, int d) {
  if (d < 2) throw DomainError("the missing-curvature quadratic needs d >= 2");
  if (known.size() != static_cast<std::size_t>(d + 1)) throw DomainError("expected d+1 known curvatures");
  double s1 = 0.0;
  double s2 = 0.0;
  for (double k : known) {
    if (k == 0.0) throw DomainError("curvatures must be nonzero");
    s1 += k;
    s2 += k * k;
  }
  const double lead = d - 1.0;
  const double c = d * s2 - s1 * s1;
  const double quarter_disc = s1 * s1 - lead * c;
  if (quarter_disc < 0.0) return std::nullopt;

  const double root = std::sqrt(quarter_disc);
  const double q = s1 >= 0.0 ? s1 + root : s1 - root;
  double first = q / lead;
  double second = q != 0.0 ? c / q : first;
  if (first < second) std::swap(first, second);
  return std::make_pair(first, second);
}

TangentConfig build_tangent_circles_2d(double r1, double r2, double r3) {
  for (double r : {r1, r2, r3}) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("radii must be positive and finite");
  }
  const double d12 = r1 + r2;
  const double d13 = r1 + r3;
  const double d23 = r2 + r3;
  const double x = (d13 * d13 - d23 * d23 + d12 * d12) / (2.0 * d12);
  const double y = std::sqrt(std::max(d13 * d13 - x * x, 0.0));

  TangentConfig cfg;
  cfg.dim = 2;
  cfg.spheres = {Sphere::make({0.0, 0.0}, r1), Sphere::make({d12, 0.0}, r2), Sphere::make({x, y}, r3)};
  return cfg;
}

SoddyCircle build_soddy_circle_2d(const TangentConfig& cfg, double k4) {
  if (k4 == 0.0 || !std::isfinite(k4)) throw DomainError("k4 must be finite and nonzero");
  if (cfg.dim != 2 || cfg.spheres.size() != 3) throw DomainError("expected three circles in the plane");

  const double r4 = 1.0 / std::abs(k4);
  const int orientation = k4 > 0.0 ? 1 : -1;

  std::vector<double> targets_sq;
  std::vector<Point> anchors;
  // Circle 3 first: the linear system comes from circles 1 and 2 relative to it, and its own
  // sphere equation is the one left over to check.
  for (std::size_t idx : {2UL, 0UL, 1UL}) {
    const auto& c = cfg.spheres[idx];
    const double rho = orientation == 1 ? c.radius + r4 : std::abs(r4 - c.radius);
    anchors.push_back(c.center);
    targets_sq.push_back(rho * rho);
  }
  const auto sol = cmgeom::trilaterate(anchors, targets_sq);

  SoddyCircle out;
  out.circle = Sphere::make(sol.point, r4, orientation);
  out.residual = std::abs(center_distance(out.circle.center, cfg.spheres[2].center) -
                          tangent_distance(out.circle, cfg.spheres[2]));
  return out;
}

void to_json(nlohmann::json& j, const Sphere& s) {
  j = nlohmann::json{{"center", s.center},
                     {"radius", s.radius},
                     {"orientation", s.orientation},
                     {"curvature", s.curvature()}};
}

}  // namespace regsimplex::soddy
