#pragma once

// Vanishing polynomials of the distance map, learned from samples.
//
// Pipeline: seeded sample points -> distance tuples (floating; odd powers of distances are
// irrational) -> monomial evaluation matrix -> SVD nullspace -> reduced echelon basis ->
// continued-fraction rationalization -> exact certification with the poly module.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "regsimplex/poly.hpp"
#include "regsimplex/rational.hpp"

namespace regsimplex::discover {

struct MonomialBasis {
  std::size_t arity = 0;
  int max_degree = 0;
  std::vector<poly::Exponent> exponents;  // grlex ascending, all total degrees <= max_degree

  std::size_t size() const { return exponents.size(); }
  poly::MultiPoly to_poly(std::span<const Rational> coefficients) const;
};

MonomialBasis enumerate_monomials(std::size_t n, int max_degree);

// Entry (i, j) = monomial j evaluated at sample i.
Eigen::MatrixXd build_eval_matrix(const std::vector<std::vector<double>>& samples, const MonomialBasis& basis);

// Affine change of variables u = linear * t + offset. Discovery evaluates monomials in the
// whitened frame of the sample cloud (centered, rotated onto principal axes, each axis scaled
// into [-1, 1]); the span of monomials of degree <= D is invariant under the change, so the
// nullspace dimension is too, and null vectors map back through frame_to_monomial_matrix.
struct AffineFrame {
  Eigen::MatrixXd linear;
  Eigen::VectorXd offset;
};

AffineFrame whitening_frame(const std::vector<std::vector<double>>& samples);
std::vector<std::vector<double>> apply_frame(const AffineFrame& frame, const std::vector<std::vector<double>>& samples);
// Column j holds the coefficients, over `basis` in the original variables t, of the j-th basis
// monomial in the frame variables u.
Eigen::MatrixXd frame_to_monomial_matrix(const AffineFrame& frame, const MonomialBasis& basis);

struct NullspaceReport {
  std::vector<double> singular_values;  // descending, of the column-equilibrated matrix analyzed
  int null_dim = 0;
  std::vector<std::vector<double>> null_basis;  // orthonormal coefficient vectors over the basis
  // sigma_keep / sigma_drop at the cut; with nothing dropped, sigma_min / (threshold * sigma_max).
  double gap = 0.0;
  double threshold = 0.0;
};

inline constexpr double kDefaultThreshold = 1e-8;
inline constexpr std::int64_t kDefaultMaxDenominator = 1'000'000;
inline constexpr double kInconclusiveGap = 10.0;

// Columns are scaled to unit norm before the SVD; singular values below threshold * sigma_max
// (or missing because the matrix has fewer rows than columns) count towards the nullspace.
NullspaceReport numeric_nullspace(const Eigen::MatrixXd& matrix, double threshold = kDefaultThreshold);

// Scales by the largest-magnitude entry, snaps negligible entries to zero, replaces every entry
// by its best rational with denominator <= max_den, and finally normalizes the first nonzero
// entry to 1. An all-zero input comes back as zeros.
RationalVector rationalize(std::span<const double> values, std::int64_t max_den = kDefaultMaxDenominator);

enum class Certificate {
  divisible_by_F,               // exact division by F leaves remainder 0 (d >= 2)
  divisible_by_line_generator,  // d = 1: divisible by (T1+T2-a)(T1-T2+a)(T1-T2-a)
  sphere_ideal_member,          // in <G, F> = <G, H>
  vanishes_on_exact_samples,    // even polynomial, exactly zero on every exact sample
  uncertified,
};

std::string certificate_name(Certificate c);

struct CertifiedCandidate {
  poly::MultiPoly poly;
  Certificate certificate = Certificate::uncertified;
  // max_i |p(t_i)| / sum_j |c_j m_j(t_i)| over the discovery samples.
  double sample_residual = 0.0;
};

struct DiscoveryConfig {
  int d = 2;
  Rational edge_sq = 1;
  int max_degree = 4;
  int n_samples = 0;  // 0 -> 3x the basis size
  std::uint64_t seed = 1;
  double threshold = kDefaultThreshold;
  std::int64_t max_denominator = kDefaultMaxDenominator;
};

struct DiscoveryReport {
  DiscoveryConfig config;
  std::size_t basis_size = 0;
  std::size_t sample_count = 0;
  NullspaceReport nullspace;
  bool inconclusive = false;  // gap below kInconclusiveGap; candidates withheld
  std::vector<CertifiedCandidate> candidates;

  bool all_certified() const;
};

DiscoveryReport discover_vanishing(const DiscoveryConfig& cfg);

enum class Verdict { no_relation_found, relation_found };

struct IndependenceReport {
  DiscoveryConfig config;
  std::vector<int> subset;  // 1-based vertex indices
  Verdict verdict = Verdict::no_relation_found;
  std::size_t basis_size = 0;
  std::size_t sample_count = 0;
  NullspaceReport nullspace;
  bool inconclusive = false;
  std::vector<CertifiedCandidate> candidates;
};

// Discovery restricted to the distances to `subset` (1-based, distinct, size 1..d).
IndependenceReport independence_test(const DiscoveryConfig& cfg, std::vector<int> subset);

struct SphereReport {
  DiscoveryConfig config;
  std::vector<int> null_dim_by_degree;  // entry k-1 for total degree <= k, k = 1..max_degree
  std::size_t basis_size = 0;
  std::size_t sample_count = 0;
  NullspaceReport nullspace;  // at max_degree
  bool inconclusive = false;
  std::vector<CertifiedCandidate> members;  // certified members of <G, H>
  std::vector<CertifiedCandidate> extras;   // vanish numerically on the sphere, not in <G, H>

  // Every extra actually vanishes on the samples (rationalization succeeded).
  bool extras_consistent(double tol = 1e-8) const;
};

SphereReport discover_on_sphere(const DiscoveryConfig& cfg);

// Exact test: is `target` a Q-linear combination of `spanning`?
bool span_contains(const std::vector<poly::MultiPoly>& spanning, const poly::MultiPoly& target);

void to_json(nlohmann::json& j, const DiscoveryConfig& c);
void to_json(nlohmann::json& j, const NullspaceReport& r);
void to_json(nlohmann::json& j, const CertifiedCandidate& c);
void to_json(nlohmann::json& j, const DiscoveryReport& r);
void to_json(nlohmann::json& j, const IndependenceReport& r);
void to_json(nlohmann::json& j, const SphereReport& r);

}  // namespace regsimplex::discover
