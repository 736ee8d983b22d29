#include <doctest.h>

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "regsimplex/cmgeom.hpp"
#include "regsimplex/errors.hpp"
#include "regsimplex/geom.hpp"
#include "support/oracles.hpp"

using namespace regsimplex;
using namespace regsimplex::cmgeom;
using oracle::q;

namespace {

oracle::Matrix squared_matrix(const std::vector<std::vector<double>>& pts) {
  // integer lattice points only, so squared distances are exact
  oracle::Matrix m(pts.size(), std::vector<Rational>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < pts[i].size(); ++k) acc += (pts[i][k] - pts[j][k]) * (pts[i][k] - pts[j][k]);
      m[i][j] = Rational(acc);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("Cayley-Menger determinant examples") {
  const auto tri = ExactDistanceMatrix::uniform(3, q(1));
  CHECK(cayley_menger_det(tri) == -3);
  CHECK(oracle::bordered_det(tri.rows()) == -3);

  for (const Rational& s : {q(1), q(7, 3), q(0)}) {
    const auto pair = ExactDistanceMatrix::from_rows({{q(0), s}, {s, q(0)}});
    CHECK(cayley_menger_det(pair) == 2 * s);
  }

  const auto line = ExactDistanceMatrix::from_rows({{q(0), q(1), q(4)}, {q(1), q(0), q(1)}, {q(4), q(1), q(0)}});
  CHECK(cayley_menger_det(line) == 0);
  CHECK(simplex_volume(line) == 0.0);

  const auto ftri = FloatDistanceMatrix::uniform(3, 1.0);
  CHECK(cayley_menger_det(ftri) == doctest::Approx(-3.0));
}

TEST_CASE("exact determinant agrees with permutation expansion") {
  std::mt19937_64 gen(13);
  std::uniform_int_distribution<int> coord(-6, 6);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
    // random symmetric non-negative data, not necessarily Euclidean
    oracle::Matrix m(n, std::vector<Rational>(n, q(0)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) m[i][j] = m[j][i] = q(std::abs(coord(gen)) + 1, 1 + std::abs(coord(gen)));
    }
    const auto dm = ExactDistanceMatrix::from_rows(m);
    CHECK(cayley_menger_det(dm) == oracle::bordered_det(m));

    std::vector<std::vector<double>> fm(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) fm[i][j] = to_double(m[i][j]);
    }
    const double exact = to_double(oracle::bordered_det(m));
    CHECK(cayley_menger_det(FloatDistanceMatrix::from_rows(fm)) ==
          doctest::Approx(exact).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("distance matrix validation") {
  CHECK_THROWS_AS(ExactDistanceMatrix::from_rows({{q(0), q(1)}, {q(2), q(0)}}), DomainError);
  CHECK_THROWS_AS(ExactDistanceMatrix::from_rows({{q(0), q(-1)}, {q(-1), q(0)}}), DomainError);
  CHECK_THROWS_AS(ExactDistanceMatrix::from_rows({{q(1), q(1)}, {q(1), q(0)}}), DomainError);
  CHECK_THROWS_AS(ExactDistanceMatrix::from_rows({{q(0)}}), DomainError);
  CHECK_THROWS_AS(ExactDistanceMatrix::from_rows({{q(0), q(1)}, {q(1)}}), DomainError);
  CHECK_THROWS_AS(FloatDistanceMatrix::from_rows({{0.0, 1.0}, {1.5, 0.0}}), DomainError);
}

TEST_CASE("volumes") {
  CHECK(simplex_volume(FloatDistanceMatrix::uniform(3, 1.0)) == doctest::Approx(std::sqrt(3.0) / 4).epsilon(1e-12));
  CHECK(simplex_volume(FloatDistanceMatrix::uniform(4, 1.0)) == doctest::Approx(1.0 / (6.0 * std::sqrt(2.0))).epsilon(1e-12));
  CHECK(oracle::coordinate_volume(geom::build_cartesian_simplex(3, 1.0).vertices()) ==
        doctest::Approx(0.117851).epsilon(1e-6));

  for (int d = 2; d <= 8; ++d) {
    const double a = 1.0 + 0.1 * d;
    const double coord = oracle::coordinate_volume(geom::build_cartesian_simplex(d, a).vertices());
    const double closed = oracle::regular_simplex_volume(d, a);
    CHECK(std::abs(coord - closed) <= 1e-12 * closed);
    const double from_exact = simplex_volume(ExactDistanceMatrix::uniform(static_cast<std::size_t>(d + 1), Rational(a * a)));
    const double from_float = simplex_volume(FloatDistanceMatrix::uniform(static_cast<std::size_t>(d + 1), a * a));
    CHECK(std::abs(from_exact - closed) <= 1e-12 * closed);
    CHECK(std::abs(from_float - closed) <= 1e-12 * closed);
  }

  // lattice tetrahedron with known volume 1/6
  const auto unit = squared_matrix({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(simplex_volume(ExactDistanceMatrix::from_rows(unit)) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

  // violates the triangle inequality
  const auto bad = ExactDistanceMatrix::from_rows({{q(0), q(1), q(16)}, {q(1), q(0), q(1)}, {q(16), q(1), q(0)}});
  CHECK_THROWS_AS(simplex_volume(bad), InfeasibleError);
  const auto bad_f = FloatDistanceMatrix::from_rows({{0.0, 1.0, 16.0}, {1.0, 0.0, 1.0}, {16.0, 1.0, 0.0}});
  CHECK_THROWS_AS(simplex_volume(bad_f), InfeasibleError);
}

TEST_CASE("relation and degenerate Cayley-Menger determinant") {
  for (int d = 2; d <= 6; ++d) {
    const Rational e = q(d, 2);
    const auto s = geom::build_embedded_simplex(d, e);
    for (const auto& smp : geom::sample_points(s, {static_cast<std::uint64_t>(d), 30, q(3)})) {
      const auto both = relation_vs_cm(d, e, smp.distances.squared);
      CHECK(both.relation_value == 0);
      CHECK(both.cm_value == 0);
    }
  }
  const RationalVector ones{q(1), q(1), q(1)};
  const auto off = relation_vs_cm(2, q(1), ones);
  CHECK(off.relation_value == -4);
  CHECK(off.relation_value == oracle::relation_on_squares(2, q(1), ones));
  CHECK(off.cm_value != 0);
  oracle::Matrix m(4, std::vector<Rational>(4, q(1)));
  for (int i = 0; i < 4; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0;
  CHECK(off.cm_value == oracle::bordered_det(m));

  const auto vertex = relation_vs_cm(2, q(1), RationalVector{q(0), q(1), q(1)});
  CHECK(vertex.relation_value == 0);
  CHECK(vertex.cm_value == 0);
  CHECK_THROWS_AS(relation_vs_cm(2, q(1), RationalVector{q(1), q(1)}), DomainError);
}

TEST_CASE("reconstruction examples") {
  const auto tri = geom::build_cartesian_simplex(2, 1.0);

  const auto mid = reconstruct_point(tri, geom::distances(tri, std::vector<double>{0.5, 0.5}));
  CHECK(mid.status == Feasibility::feasible);
  CHECK(std::abs(mid.point[0] - 0.5) < 1e-9);
  CHECK(std::abs(mid.point[1] - 0.5) < 1e-9);

  const auto v1 = reconstruct_point(tri, std::vector<double>{0.0, 1.0, 1.0});
  CHECK(v1.status == Feasibility::feasible);
  CHECK(std::abs(v1.point[0]) < 1e-12);
  CHECK(std::abs(v1.point[1]) < 1e-12);

  const auto ones = reconstruct_point(tri, std::vector<double>{1.0, 1.0, 1.0});
  CHECK(ones.status == Feasibility::infeasible);
  CHECK(std::abs(ones.residual - 2.0 / 3.0) < 1e-9);
  CHECK(std::abs(ones.point[0] - 0.5) < 1e-12);
  CHECK(std::abs(ones.point[1] - std::sqrt(3.0) / 6) < 1e-12);
  CHECK(ones.tolerance == doctest::Approx(1e-9));

  CHECK_THROWS_AS(reconstruct_point(tri, std::vector<double>{1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(reconstruct_point(tri, std::vector<double>{-1.0, 1.0, 1.0}), DomainError);
}

TEST_CASE("reconstruction round trip") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  for (int d = 2; d <= 5; ++d) {
    const auto s = geom::build_cartesian_simplex(d, 1.0);
    for (int k = 0; k < 200; ++k) {
      std::vector<double> p(static_cast<std::size_t>(d));
      for (auto& x : p) x = coord(gen);
      const auto t = geom::distances(s, p);
      const auto r = reconstruct_point(s, t);
      REQUIRE(r.status == Feasibility::feasible);
      const auto back = geom::distances(s, r.point);
      for (std::size_t j = 0; j < t.size(); ++j) CHECK(std::abs(back[j] - t[j]) < 1e-9);
    }
  }
}

TEST_CASE("residual grows when the last distance is stretched") {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int d = 2; d <= 4; ++d) {
    const auto s = geom::build_cartesian_simplex(d, 1.0);
    for (int k = 0; k < 30; ++k) {
      std::vector<double> p(static_cast<std::size_t>(d));
      for (auto& x : p) x = coord(gen);
      auto t = geom::distances(s, p);
      double previous = reconstruct_point(s, t).residual;
      const double base = t.back();
      for (double eps : {1e-4, 1e-3, 1e-2}) {
        t.back() = base * (1.0 + eps);
        const double r = reconstruct_point(s, t).residual;
        CHECK(r > previous);
        previous = r;
      }
    }
  }
}

TEST_CASE("trilateration") {
  const std::vector<Point> anchors{{0.0, 0.0}, {4.0, 0.0}, {0.0, 3.0}};
  const std::vector<double> sq{25.0, 9.0, 16.0};
  const auto t = trilaterate(anchors, sq);
  CHECK(t.point[0] == doctest::Approx(4.0));
  CHECK(t.point[1] == doctest::Approx(3.0));
  CHECK(t.residual < 1e-12);
  CHECK_THROWS_AS(trilaterate(std::vector<Point>{{0.0, 0.0}, {1.0, 0.0}}, std::vector<double>{1.0, 1.0}), DomainError);
}

TEST_CASE("last squared distance from the relation") {
  // t1 = t2 = 1/sqrt(3): roots 1/3 and 4/3
  const auto exact = last_squared_distance_roots_exact(2, q(1), RationalVector{q(1, 3), q(1, 3)});
  CHECK(exact.exact_roots == RationalVector{q(1, 3), q(4, 3)});
  REQUIRE(exact.roots.size() == 2);
  CHECK(exact.roots[0] == doctest::Approx(1.0 / 3.0));

  const double t = 1.0 / std::sqrt(3.0);
  const auto roots = last_squared_distance_roots(2, 1.0, std::vector<double>{t, t});
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(roots[1] == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  const auto tri = geom::build_cartesian_simplex(2, 1.0);
  const auto center = reconstruct_point(tri, std::vector<double>{t, t, std::sqrt(roots[0])});
  CHECK(center.status == Feasibility::feasible);
  CHECK(center.point[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(center.point[1] == doctest::Approx(std::sqrt(3.0) / 6).epsilon(1e-9));

  // roots solve the relation and one of them is the true last distance
  std::mt19937_64 gen(51);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int d = 2; d <= 5; ++d) {
    const auto s = geom::build_cartesian_simplex(d, 1.0);
    for (int k = 0; k < 20; ++k) {
      std::vector<double> p(static_cast<std::size_t>(d));
      for (auto& x : p) x = coord(gen);
      auto dist = geom::distances(s, p);
      const double last_sq = dist.back() * dist.back();
      dist.pop_back();
      const auto r = last_squared_distance_roots(d, 1.0, dist);
      bool hit = false;
      for (double root : r) {
        hit = hit || std::abs(root - last_sq) < 1e-9 * std::max(1.0, last_sq);
        auto full = dist;
        full.push_back(std::sqrt(root));
        CHECK(std::abs(oracle::relation_float(d, 1.0, full)) < 1e-8 * std::pow(std::max(1.0, root), 2));
      }
      CHECK(hit);
    }
  }

  // exact roots on exact samples include the sample's own squared distance
  const auto simplex = geom::build_embedded_simplex(3, q(2));
  for (const auto& smp : geom::sample_points(simplex, {9, 20, q(3)})) {
    RationalVector first(smp.distances.squared.begin(), smp.distances.squared.end() - 1);
    const auto ex = last_squared_distance_roots_exact(3, q(2), first);
    const Rational& want = smp.distances.squared.back();
    CHECK(std::find(ex.exact_roots.begin(), ex.exact_roots.end(), want) != ex.exact_roots.end());
  }
}

TEST_CASE("realizability probe") {
  ProbeConfig cfg;
  cfg.trials = 200;
  cfg.seed = 3;
  const auto a = probe_realizability(cfg);
  const auto b = probe_realizability(cfg);
  CHECK(nlohmann::json(a).dump() == nlohmann::json(b).dump());
  REQUIRE(a.trials.size() == 200);

  int no_root = 0;
  int roots = 0;
  for (const auto& t : a.trials) {
    CHECK(t.t_first.size() == 2);
    for (double x : t.t_first) {
      CHECK(x >= 0.1 - 1e-12);
      CHECK(x <= 10.0 + 1e-12);
    }
    CHECK(t.verdicts.size() == t.roots.size());
    no_root += t.roots.empty();
    roots += static_cast<int>(t.roots.size());
  }
  CHECK(no_root == a.no_real_root);
  CHECK(a.feasible + a.infeasible == roots);

  const nlohmann::json j = a;
  CHECK(j["summary"]["no_real_root"] == a.no_real_root);
  CHECK(j["trials"].size() == 200);
  cfg.trials = 0;
  CHECK_THROWS_AS(probe_realizability(cfg), DomainError);
}
