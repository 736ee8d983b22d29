#include "regsimplex/cmgeom.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <nlohmann/json.hpp>

#include "regsimplex/errors.hpp"
#include "regsimplex/poly.hpp"
#include "regsimplex/seeding.hpp"

namespace regsimplex::cmgeom {

namespace {

bool is_negative(const Rational& q) { return sgn(q) < 0; }
bool is_negative(double x) { return x < 0.0 || std::isnan(x); }

}  // namespace

template <typename Scalar>
SquaredDistanceMatrix<Scalar> SquaredDistanceMatrix<Scalar>::from_rows(std::vector<std::vector<Scalar>> rows) {
  const std::size_t n = rows.size();
  if (n < 2) throw DomainError("a squared distance matrix needs at least 2 points");
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw DomainError("squared distance matrix must be square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i][i] != 0) throw DomainError("squared distance matrix needs a zero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      if (is_negative(rows[i][j])) throw DomainError("squared distances must be non-negative");
      if (rows[i][j] != rows[j][i]) throw DomainError("squared distance matrix must be symmetric");
    }
  }
  return SquaredDistanceMatrix(std::move(rows));
}

template <typename Scalar>
SquaredDistanceMatrix<Scalar> SquaredDistanceMatrix<Scalar>::uniform(std::size_t count, const Scalar& value) {
  std::vector<std::vector<Scalar>> rows(count, std::vector<Scalar>(count, value));
  for (std::size_t i = 0; i < count; ++i) rows[i][i] = 0;
  return from_rows(std::move(rows));
}

template class SquaredDistanceMatrix<Rational>;
template class SquaredDistanceMatrix<double>;

Rational cayley_menger_det(const ExactDistanceMatrix& m) {
  const std::size_t n = m.size();
  mpz_class common = 1;
  for (const auto& row : m.rows()) {
    for (const auto& q : row) common = lcm(common, q.get_den());
  }

  // Bordered integer matrix with the squared distances scaled by `common`.
  const std::size_t size = n + 1;
  std::vector<std::vector<mpz_class>> a(size, std::vector<mpz_class>(size, 0));
  for (std::size_t i = 1; i < size; ++i) {
    a[0][i] = 1;
    a[i][0] = 1;
    for (std::size_t j = 1; j < size; ++j) {
      const Rational scaled = m(i - 1, j - 1) * common;
      a[i][j] = scaled.get_num();
    }
  }

  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < size && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == size) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }

  // The bordered determinant is homogeneous of degree n-1 in the squared distances.
  mpz_class scale_pow;
  mpz_pow_ui(scale_pow.get_mpz_t(), common.get_mpz_t(), static_cast<unsigned long>(n - 1));
  Rational det(a[size - 1][size - 1] * sign, scale_pow);
  det.canonicalize();
  return det;
}

double cayley_menger_det(const FloatDistanceMatrix& m) {
  const auto size = static_cast<Eigen::Index>(m.size() + 1);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index i = 1; i < size; ++i) {
    b(0, i) = 1.0;
    b(i, 0) = 1.0;
    for (Eigen::Index j = 1; j < size; ++j) {
      b(i, j) = m(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
    }
  }
  return b.partialPivLu().determinant();
}

namespace {

// 2^d (d!)^2
double volume_denominator(std::size_t d) {
  double f = 1.0;
  for (std::size_t k = 2; k <= d; ++k) f *= static_cast<double>(k);
  return std::ldexp(f * f, static_cast<int>(d));
}

}  // namespace

double simplex_volume(const FloatDistanceMatrix& m) {
  const std::size_t d = m.size() - 1;
  const double sign = (d + 1) % 2 == 0 ? 1.0 : -1.0;
  const double vol_sq = sign * cayley_menger_det(m) / volume_denominator(d);

  double peak = 0.0;
  for (const auto& row : m.rows()) {
    for (double x : row) peak = std::max(peak, x);
  }
  const double scale = std::pow(peak, static_cast<double>(d)) / volume_denominator(d);
  if (vol_sq < -1e-10 * scale) {
    throw InfeasibleError("Cayley-Menger determinant has the wrong sign: distances are not Euclidean");
  }
  return std::sqrt(std::max(vol_sq, 0.0));
}

double simplex_volume(const ExactDistanceMatrix& m) {
  const std::size_t d = m.size() - 1;
  Rational vol_sq = cayley_menger_det(m) / volume_denominator(d);
  if ((d + 1) % 2 != 0) vol_sq = -vol_sq;
  if (sgn(vol_sq) < 0) {
    throw InfeasibleError("Cayley-Menger determinant has the wrong sign: distances are not Euclidean");
  }
  return std::sqrt(to_double(vol_sq));
}

RelationVsCm relation_vs_cm(int d, const Rational& edge_sq, std::span<const Rational> squared_t) {
  if (d < 1) throw DomainError("d must be >= 1");
  const auto n = static_cast<std::size_t>(d + 1);
  if (squared_t.size() != n) throw DomainError("expected d+1 squared distances");

  std::vector<std::vector<Rational>> rows(n + 1, std::vector<Rational>(n + 1, edge_sq));
  for (std::size_t i = 0; i <= n; ++i) rows[i][i] = 0;
  for (std::size_t j = 0; j < n; ++j) {
    rows[n][j] = squared_t[j];
    rows[j][n] = squared_t[j];
  }

  RelationVsCm out;
  out.relation_value = poly::eval_on_squares(poly::build_F(d, edge_sq), squared_t);
  out.cm_value = cayley_menger_det(ExactDistanceMatrix::from_rows(std::move(rows)));
  return out;
}

Trilateration trilaterate(std::span<const Point> anchors, std::span<const double> squared_distances) {
  if (anchors.size() < 2) throw DomainError("trilateration needs at least two anchors");
  if (squared_distances.size() != anchors.size()) throw DomainError("one distance per anchor expected");
  const auto dim = static_cast<Eigen::Index>(anchors.front().size());
  if (static_cast<Eigen::Index>(anchors.size()) != dim + 1) throw DomainError("trilateration needs dim+1 anchors");

  const Eigen::Map<const Eigen::VectorXd> p0(anchors[0].data(), dim);
  Eigen::MatrixXd a(dim, dim);
  Eigen::VectorXd rhs(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const auto& anchor = anchors[static_cast<std::size_t>(k + 1)];
    if (static_cast<Eigen::Index>(anchor.size()) != dim) throw DomainError("anchor dimensions differ");
    const Eigen::Map<const Eigen::VectorXd> pk(anchor.data(), dim);
    a.row(k) = 2.0 * (pk - p0).transpose();
    rhs(k) = (pk.squaredNorm() - p0.squaredNorm()) -
             (squared_distances[static_cast<std::size_t>(k + 1)] - squared_distances[0]);
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) throw std::logic_error("trilateration: anchors are affinely dependent");
  const Eigen::VectorXd x = lu.solve(rhs);

  Trilateration out;
  out.point.assign(x.data(), x.data() + dim);
  out.residual = std::abs((x - p0).squaredNorm() - squared_distances[0]);
  return out;
}

ReconstructionResult reconstruct_point(const geom::CartesianSimplex& s, std::span<const double> t,
                                       std::optional<double> tol) {
  const auto n = static_cast<std::size_t>(s.dim() + 1);
  if (t.size() != n) throw DomainError("expected d+1 distances");
  for (double x : t) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("distances must be finite and non-negative");
  }
  const double tolerance = tol.value_or(1e-9 * s.edge() * s.edge());
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");

  std::vector<double> squares(n);
  for (std::size_t j = 0; j < n; ++j) squares[j] = t[j] * t[j];
  const auto sol = trilaterate(s.vertices(), squares);

  ReconstructionResult out;
  out.point = sol.point;
  out.residual = sol.residual;
  out.tolerance = tolerance;
  out.status = sol.residual <= tolerance ? Feasibility::feasible : Feasibility::infeasible;
  return out;
}

std::vector<double> last_squared_distance_roots(int d, double edge_sq, std::span<const double> t_first) {
  if (d < 1) throw DomainError("d must be >= 1");
  if (t_first.size() != static_cast<std::size_t>(d)) throw DomainError("expected d known distances");
  double p = edge_sq;
  double q = edge_sq * edge_sq;
  for (double t : t_first) {
    p += t * t;
    q += t * t * t * t;
  }
  const double dd = d;
  const double c = (dd + 1.0) * q - p * p;
  const double quarter_disc = p * p - dd * c;
  if (quarter_disc < 0.0) return {};
  // Stable form: the root of larger magnitude first, the other via the product c/d.
  const double root = std::sqrt(quarter_disc);
  const double big = (p + root) / dd;
  const double small = big != 0.0 ? c / (dd * big) : 0.0;
  std::vector<double> roots;
  for (double s : {small, big}) {
    if (s >= 0.0) roots.push_back(s);
  }
  if (roots.size() == 2 && roots[0] > roots[1]) std::swap(roots[0], roots[1]);
  return roots;
}

ExactLastSquared last_squared_distance_roots_exact(int d, const Rational& edge_sq,
                                                   std::span<const Rational> squares_first) {
  if (d < 1) throw DomainError("d must be >= 1");
  if (squares_first.size() != static_cast<std::size_t>(d)) throw DomainError("expected d known squared distances");
  Rational p = edge_sq;
  Rational q = edge_sq * edge_sq;
  for (const auto& s : squares_first) {
    p += s;
    q += s * s;
  }
  const Rational c = Rational(d + 1) * q - p * p;

  ExactLastSquared out;
  out.quarter_discriminant = p * p - Rational(d) * c;
  if (sgn(out.quarter_discriminant) < 0) return out;
  if (auto root = exact_sqrt(out.quarter_discriminant)) {
    for (const Rational& s : {Rational((p - *root) / d), Rational((p + *root) / d)}) {
      if (sgn(s) >= 0 && (out.exact_roots.empty() || out.exact_roots.back() != s)) out.exact_roots.push_back(s);
    }
    for (const auto& s : out.exact_roots) out.roots.push_back(to_double(s));
  } else {
    const double r = std::sqrt(to_double(out.quarter_discriminant));
    for (double s : {(to_double(p) - r) / d, (to_double(p) + r) / d}) {
      if (s >= 0.0) out.roots.push_back(s);
    }
  }
  return out;
}

ProbeReport probe_realizability(const ProbeConfig& cfg) {
  if (cfg.d < 1) throw DomainError("d must be >= 1");
  if (cfg.trials < 1) throw DomainError("trials must be >= 1");
  if (sgn(cfg.edge_sq) <= 0) throw DomainError("squared edge length must be positive");

  const double edge_sq = to_double(cfg.edge_sq);
  const double edge = std::sqrt(edge_sq);
  const auto simplex = geom::build_cartesian_simplex(cfg.d, edge);

  ProbeReport report;
  report.config = cfg;
  report.trials.reserve(static_cast<std::size_t>(cfg.trials));
  for (int k = 0; k < cfg.trials; ++k) {
    boost::random::mt19937_64 gen(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
    boost::random::uniform_real_distribution<double> exponent(-1.0, 1.0);
    ProbeTrial trial;
    for (int j = 0; j < cfg.d; ++j) trial.t_first.push_back(edge * std::pow(10.0, exponent(gen)));
    trial.roots = last_squared_distance_roots(cfg.d, edge_sq, trial.t_first);
    if (trial.roots.empty()) ++report.no_real_root;
    for (double s : trial.roots) {
      std::vector<double> t = trial.t_first;
      t.push_back(std::sqrt(s));
      auto verdict = reconstruct_point(simplex, t, cfg.tol);
      (verdict.status == Feasibility::feasible ? report.feasible : report.infeasible) += 1;
      trial.verdicts.push_back(std::move(verdict));
    }
    report.trials.push_back(std::move(trial));
  }
  return report;
}

void to_json(nlohmann::json& j, const ReconstructionResult& r) {
  j = nlohmann::json{{"status", r.status == Feasibility::feasible ? "feasible" : "infeasible"},
                     {"point", r.point},
                     {"residual", r.residual},
                     {"tolerance", r.tolerance}};
}

void to_json(nlohmann::json& j, const ProbeReport& r) {
  auto trials = nlohmann::json::array();
  for (const auto& t : r.trials) {
    trials.push_back({{"t_first", t.t_first}, {"roots", t.roots}, {"verdicts", t.verdicts}});
  }
  nlohmann::json config{{"d", r.config.d},
                        {"edge_sq", to_string(r.config.edge_sq)},
                        {"trials", r.config.trials},
                        {"seed", r.config.seed}};
  config["tol"] = r.config.tol ? nlohmann::json(*r.config.tol) : nlohmann::json(nullptr);
  j = nlohmann::json{{"config", std::move(config)},
                     {"summary", {{"no_real_root", r.no_real_root}, {"feasible", r.feasible}, {"infeasible", r.infeasible}}},
                     {"trials", std::move(trials)}};
}

}  // namespace regsimplex::cmgeom
