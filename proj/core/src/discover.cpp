#include "regsimplex/discover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>

#include <nlohmann/json.hpp>

#include "regsimplex/errors.hpp"
#include "regsimplex/geom.hpp"
#include "regsimplex/poly_json.hpp"

namespace regsimplex::discover {

using poly::Exponent;
using poly::MultiPoly;

namespace {

void enumerate_rec(std::size_t var, int remaining, Exponent& current, std::vector<Exponent>& out) {
  if (var == current.size()) {
    out.push_back(current);
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    current[var] = k;
    enumerate_rec(var + 1, remaining - k, current, out);
  }
  current[var] = 0;
}

// Entries below this fraction of the row's largest entry are treated as zero.
constexpr double kSnapTolerance = 1e-9;
// Echelon pivots must reach this fraction of the largest basis entry.
constexpr double kPivotTolerance = 1e-6;

}  // namespace

MultiPoly MonomialBasis::to_poly(std::span<const Rational> coefficients) const {
  if (coefficients.size() != exponents.size()) throw DomainError("coefficient vector does not match basis size");
  MultiPoly p(arity);
  for (std::size_t j = 0; j < exponents.size(); ++j) p.add_term(exponents[j], coefficients[j]);
  return p;
}

MonomialBasis enumerate_monomials(std::size_t n, int max_degree) {
  if (n < 1) throw DomainError("monomial basis needs at least one variable");
  if (max_degree < 0) throw DomainError("max degree must be >= 0");
  MonomialBasis basis;
  basis.arity = n;
  basis.max_degree = max_degree;
  Exponent current(n, 0);
  enumerate_rec(0, max_degree, current, basis.exponents);
  std::sort(basis.exponents.begin(), basis.exponents.end(), poly::GrlexLess{});
  return basis;
}

Eigen::MatrixXd build_eval_matrix(const std::vector<std::vector<double>>& samples, const MonomialBasis& basis) {
  const auto rows = static_cast<Eigen::Index>(samples.size());
  const auto cols = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd a(rows, cols);
  std::vector<std::vector<double>> powers(basis.arity);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& t = samples[static_cast<std::size_t>(i)];
    if (t.size() != basis.arity) {
      throw DomainError("sample " + std::to_string(i) + " has arity " + std::to_string(t.size()) + ", basis has " +
                        std::to_string(basis.arity));
    }
    for (std::size_t v = 0; v < basis.arity; ++v) {
      powers[v].assign(static_cast<std::size_t>(basis.max_degree) + 1, 1.0);
      for (int k = 1; k <= basis.max_degree; ++k) powers[v][static_cast<std::size_t>(k)] = powers[v][k - 1] * t[v];
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto& e = basis.exponents[static_cast<std::size_t>(j)];
      double value = 1.0;
      for (std::size_t v = 0; v < e.size(); ++v) value *= powers[v][static_cast<std::size_t>(e[v])];
      a(i, j) = value;
    }
  }
  return a;
}

AffineFrame whitening_frame(const std::vector<std::vector<double>>& samples) {
  if (samples.empty()) throw DomainError("whitening_frame: no samples");
  const auto n = static_cast<Eigen::Index>(samples.front().size());
  Eigen::MatrixXd x(static_cast<Eigen::Index>(samples.size()), n);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (static_cast<Eigen::Index>(samples[i].size()) != n) throw DomainError("whitening_frame: ragged samples");
    for (Eigen::Index k = 0; k < n; ++k) x(static_cast<Eigen::Index>(i), k) = samples[i][static_cast<std::size_t>(k)];
  }
  const Eigen::VectorXd mean = x.colwise().mean().transpose();
  const Eigen::MatrixXd centered = x.rowwise() - mean.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(centered.transpose() * centered);
  const Eigen::MatrixXd axes = eig.eigenvectors();
  const Eigen::MatrixXd projected = centered * axes;

  Eigen::VectorXd scale(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double peak = projected.col(k).cwiseAbs().maxCoeff();
    scale(k) = peak > 0.0 ? 1.0 / peak : 1.0;
  }
  AffineFrame frame;
  frame.linear = scale.asDiagonal() * axes.transpose();
  frame.offset = -frame.linear * mean;
  return frame;
}

std::vector<std::vector<double>> apply_frame(const AffineFrame& frame, const std::vector<std::vector<double>>& samples) {
  std::vector<std::vector<double>> out;
  out.reserve(samples.size());
  for (const auto& t : samples) {
    const Eigen::Map<const Eigen::VectorXd> tv(t.data(), static_cast<Eigen::Index>(t.size()));
    const Eigen::VectorXd u = frame.linear * tv + frame.offset;
    out.emplace_back(u.data(), u.data() + u.size());
  }
  return out;
}

Eigen::MatrixXd frame_to_monomial_matrix(const AffineFrame& frame, const MonomialBasis& basis) {
  const std::size_t n = basis.arity;
  if (static_cast<std::size_t>(frame.linear.rows()) != n || static_cast<std::size_t>(frame.linear.cols()) != n) {
    throw DomainError("frame arity does not match the basis");
  }
  std::map<Exponent, std::size_t, poly::GrlexLess> index;
  for (std::size_t j = 0; j < basis.size(); ++j) index.emplace(basis.exponents[j], j);

  const auto m = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd current(m);
  Eigen::VectorXd next(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    // Expand prod_k (linear.row(k) . t + offset(k))^{e_k} one affine factor at a time.
    current.setZero();
    current(static_cast<Eigen::Index>(index.at(Exponent(n, 0)))) = 1.0;
    const auto& e = basis.exponents[static_cast<std::size_t>(j)];
    for (std::size_t k = 0; k < n; ++k) {
      for (int rep = 0; rep < e[k]; ++rep) {
        next.setZero();
        for (Eigen::Index i = 0; i < m; ++i) {
          const double c = current(i);
          if (c == 0.0) continue;
          const auto& ex = basis.exponents[static_cast<std::size_t>(i)];
          next(i) += c * frame.offset(static_cast<Eigen::Index>(k));
          Exponent raised = ex;
          for (std::size_t l = 0; l < n; ++l) {
            ++raised[l];
            next(static_cast<Eigen::Index>(index.at(raised))) +=
                c * frame.linear(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
            --raised[l];
          }
        }
        current.swap(next);
      }
    }
    out.col(j) = current;
  }
  return out;
}

NullspaceReport numeric_nullspace(const Eigen::MatrixXd& matrix, double threshold) {
  if (matrix.rows() == 0 || matrix.cols() == 0) throw DomainError("numeric_nullspace: empty matrix");
  if (!(threshold > 0.0)) throw DomainError("numeric_nullspace: threshold must be positive");

  const Eigen::Index m = matrix.cols();
  Eigen::VectorXd col_scale(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double norm = matrix.col(j).norm();
    col_scale(j) = norm > 0.0 ? 1.0 / norm : 1.0;
  }
  const Eigen::MatrixXd scaled = matrix * col_scale.asDiagonal();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();

  NullspaceReport report;
  report.threshold = threshold;
  report.singular_values.assign(sv.data(), sv.data() + sv.size());
  report.singular_values.resize(static_cast<std::size_t>(m), 0.0);

  const double sigma_max = report.singular_values.front();
  const double cut = threshold * sigma_max;
  Eigen::Index rank = 0;
  while (rank < m && report.singular_values[static_cast<std::size_t>(rank)] > cut) ++rank;
  report.null_dim = static_cast<int>(m - rank);

  if (rank == 0) {
    report.gap = std::numeric_limits<double>::infinity();
  } else if (rank == m) {
    report.gap = report.singular_values.back() / cut;
  } else {
    const double keep = report.singular_values[static_cast<std::size_t>(rank - 1)];
    const double drop = report.singular_values[static_cast<std::size_t>(rank)];
    report.gap = drop > 0.0 ? keep / drop : std::numeric_limits<double>::infinity();
  }

  if (report.null_dim > 0) {
    // Undo the column scaling, then re-orthonormalize.
    Eigen::MatrixXd basis = col_scale.asDiagonal() * svd.matrixV().rightCols(report.null_dim);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m, report.null_dim);
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
      report.null_basis.emplace_back(q.col(k).data(), q.col(k).data() + m);
    }
  }
  return report;
}

RationalVector rationalize(std::span<const double> values, std::int64_t max_den) {
  if (max_den < 1) throw DomainError("rationalize: max_den must be >= 1");
  double peak = 0.0;
  for (double x : values) peak = std::max(peak, std::abs(x));
  RationalVector out(values.size(), Rational(0));
  if (peak == 0.0) return out;
  double pivot = 0.0;
  for (double x : values) {
    if (std::abs(x) == peak) {
      pivot = x;
      break;
    }
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double scaled = values[i] / pivot;
    if (std::abs(scaled) < kSnapTolerance) continue;
    out[i] = best_rational(scaled, max_den);
  }
  for (const auto& q : out) {
    if (sgn(q) != 0) {
      const Rational lead = q;
      for (auto& x : out) x /= lead;
      break;
    }
  }
  return out;
}

std::string certificate_name(Certificate c) {
  switch (c) {
    case Certificate::divisible_by_F:
      return "divisible-by-F";
    case Certificate::divisible_by_line_generator:
      return "divisible-by-line-generator";
    case Certificate::sphere_ideal_member:
      return "member-of-<G,H>";
    case Certificate::vanishes_on_exact_samples:
      return "exact-vanishing-on-exact-samples";
    case Certificate::uncertified:
      return "uncertified";
  }
  return "uncertified";
}

bool DiscoveryReport::all_certified() const {
  return std::all_of(candidates.begin(), candidates.end(),
                     [](const CertifiedCandidate& c) { return c.certificate != Certificate::uncertified; });
}

bool SphereReport::extras_consistent(double tol) const {
  return std::all_of(extras.begin(), extras.end(),
                     [tol](const CertifiedCandidate& c) { return c.sample_residual <= tol; });
}

namespace {

void check_config(const DiscoveryConfig& cfg, int min_d) {
  if (cfg.d < min_d) throw DomainError("d must be >= " + std::to_string(min_d));
  if (cfg.max_degree < 1) throw DomainError("max degree must be >= 1");
  if (sgn(cfg.edge_sq) <= 0) throw DomainError("squared edge length must be positive");
  if (cfg.n_samples < 0) throw DomainError("sample count must be non-negative");
  if (!(cfg.threshold > 0.0)) throw DomainError("threshold must be positive");
  if (cfg.max_denominator < 1) throw DomainError("max denominator must be >= 1");
}

std::size_t sample_count_for(const DiscoveryConfig& cfg, std::size_t basis_size) {
  return cfg.n_samples > 0 ? static_cast<std::size_t>(cfg.n_samples) : 3 * basis_size;
}

// Reduced row echelon form of the nullspace basis (rows), pivoting column by column in basis
// order. Exact nullspaces with rational structure come out with rational entries.
std::vector<std::vector<double>> echelon_rows(const std::vector<std::vector<double>>& basis) {
  if (basis.empty()) return {};
  const std::size_t k = basis.size();
  const std::size_t m = basis.front().size();
  Eigen::MatrixXd b(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < m; ++j) b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = basis[i][j];
  }
  const double tol = kPivotTolerance * b.cwiseAbs().maxCoeff();
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < b.cols() && row < b.rows(); ++col) {
    Eigen::Index best = row;
    for (Eigen::Index i = row + 1; i < b.rows(); ++i) {
      if (std::abs(b(i, col)) > std::abs(b(best, col))) best = i;
    }
    if (std::abs(b(best, col)) <= tol) continue;
    b.row(row).swap(b.row(best));
    b.row(row) /= b(row, col);
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
      if (i != row) b.row(i) -= b(i, col) * b.row(row);
    }
    ++row;
  }
  std::vector<std::vector<double>> out(static_cast<std::size_t>(row), std::vector<double>(m));
  for (Eigen::Index i = 0; i < row; ++i) {
    for (std::size_t j = 0; j < m; ++j) out[static_cast<std::size_t>(i)][j] = b(i, static_cast<Eigen::Index>(j));
  }
  return out;
}

double sample_residual(const MultiPoly& p, const std::vector<std::vector<double>>& samples) {
  double worst = 0.0;
  for (const auto& t : samples) {
    double value = 0.0;
    double magnitude = 0.0;
    for (const auto& [e, c] : p.terms()) {
      double term = to_double(c);
      for (std::size_t v = 0; v < e.size(); ++v) term *= std::pow(t[v], e[v]);
      value += term;
      magnitude += std::abs(term);
    }
    if (magnitude > 0.0) worst = std::max(worst, std::abs(value) / magnitude);
  }
  return worst;
}

// Nullspace of the evaluation matrix, computed in the whitened frame and reported with the
// null basis expressed over the monomials in the original distances.
NullspaceReport analyze(const std::vector<std::vector<double>>& samples, const MonomialBasis& basis,
                        double threshold) {
  const AffineFrame frame = whitening_frame(samples);
  NullspaceReport report = numeric_nullspace(build_eval_matrix(apply_frame(frame, samples), basis), threshold);
  if (report.null_dim == 0) return report;

  const Eigen::MatrixXd change = frame_to_monomial_matrix(frame, basis);
  const auto m = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd mapped(m, report.null_dim);
  for (Eigen::Index k = 0; k < mapped.cols(); ++k) {
    const auto& v = report.null_basis[static_cast<std::size_t>(k)];
    mapped.col(k) = change * Eigen::Map<const Eigen::VectorXd>(v.data(), m);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(mapped);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m, report.null_dim);
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    report.null_basis[static_cast<std::size_t>(k)].assign(q.col(k).data(), q.col(k).data() + m);
  }
  return report;
}

std::vector<MultiPoly> rational_candidates(const NullspaceReport& ns, const MonomialBasis& basis,
                                           std::int64_t max_den) {
  std::vector<MultiPoly> out;
  for (const auto& row : echelon_rows(ns.null_basis)) {
    const RationalVector coeffs = rationalize(row, max_den);
    out.push_back(basis.to_poly(coeffs));
  }
  return out;
}

bool vanishes_on(const MultiPoly& p, const std::vector<RationalVector>& exact_squares) {
  if (p.is_zero() || !poly::has_only_even_exponents(p)) return false;
  return std::all_of(exact_squares.begin(), exact_squares.end(),
                     [&](const RationalVector& s) { return sgn(poly::eval_on_squares(p, s)) == 0; });
}

struct SampleSet {
  std::vector<std::vector<double>> lengths;
  std::vector<RationalVector> squares;
};

SampleSet full_space_samples(const DiscoveryConfig& cfg, std::size_t count) {
  const auto simplex = geom::build_embedded_simplex(cfg.d, cfg.edge_sq);
  geom::SampleConfig sc;
  sc.seed = cfg.seed;
  sc.count = static_cast<int>(count);
  SampleSet out;
  for (auto& s : geom::sample_points(simplex, sc)) {
    out.lengths.push_back(s.distances.to_lengths());
    out.squares.push_back(std::move(s.distances.squared));
  }
  return out;
}

std::vector<std::vector<double>> sphere_samples(const DiscoveryConfig& cfg, std::size_t count) {
  const auto simplex = geom::build_cartesian_simplex(cfg.d, std::sqrt(to_double(cfg.edge_sq)));
  geom::SampleConfig sc;
  sc.seed = cfg.seed;
  sc.count = static_cast<int>(count);
  std::vector<std::vector<double>> out;
  for (const auto& p : geom::sample_circumsphere(simplex, sc)) out.push_back(geom::distances(simplex, p));
  return out;
}

}  // namespace

DiscoveryReport discover_vanishing(const DiscoveryConfig& cfg) {
  check_config(cfg, 1);
  const auto n = static_cast<std::size_t>(cfg.d + 1);
  const MonomialBasis basis = enumerate_monomials(n, cfg.max_degree);
  const SampleSet samples = full_space_samples(cfg, sample_count_for(cfg, basis.size()));

  DiscoveryReport report;
  report.config = cfg;
  report.basis_size = basis.size();
  report.sample_count = samples.lengths.size();
  report.nullspace = analyze(samples.lengths, basis, cfg.threshold);
  report.inconclusive = report.sample_count < report.basis_size || report.nullspace.gap < kInconclusiveGap;
  if (report.inconclusive || report.nullspace.null_dim == 0) return report;

  // d = 1 certification needs the edge length itself to be rational.
  std::optional<MultiPoly> line_generator;
  if (cfg.d == 1) {
    if (auto edge = exact_sqrt(cfg.edge_sq)) line_generator = poly::build_line_generator(*edge);
  }

  for (auto& p : rational_candidates(report.nullspace, basis, cfg.max_denominator)) {
    CertifiedCandidate c;
    c.sample_residual = sample_residual(p, samples.lengths);
    if (cfg.d >= 2 && !p.is_zero() && poly::divide_by_F(p, cfg.d, cfg.edge_sq).remainder.is_zero()) {
      c.certificate = Certificate::divisible_by_F;
    } else if (line_generator && !p.is_zero() && poly::divide_in_variable(p, *line_generator, 1).remainder.is_zero()) {
      c.certificate = Certificate::divisible_by_line_generator;
    } else if (vanishes_on(p, samples.squares)) {
      c.certificate = Certificate::vanishes_on_exact_samples;
    }
    c.poly = std::move(p);
    report.candidates.push_back(std::move(c));
  }
  return report;
}

IndependenceReport independence_test(const DiscoveryConfig& cfg, std::vector<int> subset) {
  check_config(cfg, 1);
  if (subset.empty()) throw DomainError("independence subset must not be empty");
  if (subset.size() > static_cast<std::size_t>(cfg.d)) {
    throw DomainError("independence subset has " + std::to_string(subset.size()) +
                      " vertices; at most d are independent (all d+1 distances satisfy F = 0)");
  }
  std::set<int> seen;
  for (int v : subset) {
    if (v < 1 || v > cfg.d + 1) throw DomainError("vertex index " + std::to_string(v) + " out of range 1..d+1");
    if (!seen.insert(v).second) throw DomainError("duplicate vertex index " + std::to_string(v));
  }

  const MonomialBasis basis = enumerate_monomials(subset.size(), cfg.max_degree);
  const SampleSet full = full_space_samples(cfg, sample_count_for(cfg, basis.size()));
  std::vector<std::vector<double>> restricted;
  std::vector<RationalVector> restricted_sq;
  restricted.reserve(full.lengths.size());
  for (std::size_t i = 0; i < full.lengths.size(); ++i) {
    std::vector<double> t;
    RationalVector s;
    for (int v : subset) {
      t.push_back(full.lengths[i][static_cast<std::size_t>(v - 1)]);
      s.push_back(full.squares[i][static_cast<std::size_t>(v - 1)]);
    }
    restricted.push_back(std::move(t));
    restricted_sq.push_back(std::move(s));
  }

  IndependenceReport report;
  report.config = cfg;
  report.subset = std::move(subset);
  report.basis_size = basis.size();
  report.sample_count = restricted.size();
  report.nullspace = analyze(restricted, basis, cfg.threshold);
  report.inconclusive = report.sample_count < report.basis_size || report.nullspace.gap < kInconclusiveGap;
  report.verdict = report.nullspace.null_dim == 0 ? Verdict::no_relation_found : Verdict::relation_found;
  if (report.inconclusive || report.nullspace.null_dim == 0) return report;

  for (auto& p : rational_candidates(report.nullspace, basis, cfg.max_denominator)) {
    CertifiedCandidate c;
    c.sample_residual = sample_residual(p, restricted);
    if (vanishes_on(p, restricted_sq)) c.certificate = Certificate::vanishes_on_exact_samples;
    c.poly = std::move(p);
    report.candidates.push_back(std::move(c));
  }
  return report;
}

SphereReport discover_on_sphere(const DiscoveryConfig& cfg) {
  check_config(cfg, 2);
  const auto n = static_cast<std::size_t>(cfg.d + 1);

  SphereReport report;
  report.config = cfg;
  for (int degree = 1; degree <= cfg.max_degree; ++degree) {
    DiscoveryConfig at = cfg;
    at.max_degree = degree;
    const MonomialBasis basis = enumerate_monomials(n, degree);
    const auto samples = sphere_samples(at, sample_count_for(at, basis.size()));
    auto ns = analyze(samples, basis, cfg.threshold);
    report.null_dim_by_degree.push_back(ns.null_dim);
    if (degree < cfg.max_degree) continue;

    report.basis_size = basis.size();
    report.sample_count = samples.size();
    report.nullspace = std::move(ns);
    report.inconclusive = report.sample_count < report.basis_size || report.nullspace.gap < kInconclusiveGap;
    if (report.inconclusive || report.nullspace.null_dim == 0) break;

    for (auto& p : rational_candidates(report.nullspace, basis, cfg.max_denominator)) {
      CertifiedCandidate c;
      c.sample_residual = sample_residual(p, samples);
      const bool member = !p.is_zero() && poly::reduce_modulo_sphere_ideal(p, cfg.d, cfg.edge_sq).member;
      c.certificate = member ? Certificate::sphere_ideal_member : Certificate::uncertified;
      c.poly = std::move(p);
      (member ? report.members : report.extras).push_back(std::move(c));
    }
  }
  return report;
}

bool span_contains(const std::vector<MultiPoly>& spanning, const MultiPoly& target) {
  // Column index per monomial appearing anywhere.
  std::map<Exponent, std::size_t, poly::GrlexLess> column;
  auto index_terms = [&](const MultiPoly& p) {
    for (const auto& [e, c] : p.terms()) column.try_emplace(e, 0);
  };
  for (const auto& p : spanning) index_terms(p);
  index_terms(target);
  std::size_t next = 0;
  for (auto& [e, idx] : column) idx = next++;

  auto row_of = [&](const MultiPoly& p) {
    RationalVector row(column.size(), Rational(0));
    for (const auto& [e, c] : p.terms()) row[column.at(e)] = c;
    return row;
  };

  // Gaussian elimination over Q on the spanning rows, then reduce the target row.
  std::vector<RationalVector> rows;
  std::vector<std::size_t> pivots;
  for (const auto& p : spanning) {
    RationalVector r = row_of(p);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (sgn(r[pivots[k]]) == 0) continue;
      const Rational f = r[pivots[k]];
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= f * rows[k][j];
    }
    auto it = std::find_if(r.begin(), r.end(), [](const Rational& q) { return sgn(q) != 0; });
    if (it == r.end()) continue;
    const Rational lead = *it;
    for (auto& x : r) x /= lead;
    const auto piv = static_cast<std::size_t>(it - r.begin());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (sgn(rows[k][piv]) == 0) continue;
      const Rational f = rows[k][piv];
      for (std::size_t j = 0; j < r.size(); ++j) rows[k][j] -= f * r[j];
    }
    rows.push_back(std::move(r));
    pivots.push_back(piv);
  }
  RationalVector t = row_of(target);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (sgn(t[pivots[k]]) == 0) continue;
    const Rational f = t[pivots[k]];
    for (std::size_t j = 0; j < t.size(); ++j) t[j] -= f * rows[k][j];
  }
  return std::all_of(t.begin(), t.end(), [](const Rational& q) { return sgn(q) == 0; });
}

namespace {

nlohmann::json finite_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

nlohmann::json candidates_json(const std::vector<CertifiedCandidate>& cs) {
  auto arr = nlohmann::json::array();
  for (const auto& c : cs) arr.push_back(c);
  return arr;
}

}  // namespace

void to_json(nlohmann::json& j, const DiscoveryConfig& c) {
  j = nlohmann::json{{"d", c.d},
                     {"edge_sq", to_string(c.edge_sq)},
                     {"max_degree", c.max_degree},
                     {"n_samples", c.n_samples},
                     {"seed", c.seed},
                     {"threshold", c.threshold},
                     {"max_denominator", c.max_denominator}};
}

void to_json(nlohmann::json& j, const NullspaceReport& r) {
  j = nlohmann::json{{"singular_values", r.singular_values},
                     {"null_dim", r.null_dim},
                     {"gap", finite_or_null(r.gap)},
                     {"threshold", r.threshold}};
}

void to_json(nlohmann::json& j, const CertifiedCandidate& c) {
  j = nlohmann::json{{"poly", poly::poly_to_json(c.poly)},
                     {"text", poly::to_string(c.poly)},
                     {"certificate", certificate_name(c.certificate)},
                     {"sample_residual", finite_or_null(c.sample_residual)}};
}

void to_json(nlohmann::json& j, const DiscoveryReport& r) {
  j = nlohmann::json{{"config", r.config},
                     {"basis_size", r.basis_size},
                     {"sample_count", r.sample_count},
                     {"nullspace", r.nullspace},
                     {"inconclusive", r.inconclusive},
                     {"candidates", candidates_json(r.candidates)}};
}

void to_json(nlohmann::json& j, const IndependenceReport& r) {
  j = nlohmann::json{{"config", r.config},
                     {"subset", r.subset},
                     {"verdict", r.verdict == Verdict::no_relation_found ? "no-relation-found" : "relation-found"},
                     {"basis_size", r.basis_size},
                     {"sample_count", r.sample_count},
                     {"nullspace", r.nullspace},
                     {"inconclusive", r.inconclusive},
                     {"candidates", candidates_json(r.candidates)}};
}

void to_json(nlohmann::json& j, const SphereReport& r) {
  j = nlohmann::json{{"config", r.config},
                     {"null_dim_by_degree", r.null_dim_by_degree},
                     {"basis_size", r.basis_size},
                     {"sample_count", r.sample_count},
                     {"nullspace", r.nullspace},
                     {"inconclusive", r.inconclusive},
                     {"members", candidates_json(r.members)},
                     {"extras", candidates_json(r.extras)}};
}

}  // namespace regsimplex::discover
