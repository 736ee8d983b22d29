#include <benchmark/benchmark.h>

#include "regsimplex/cmgeom.hpp"
#include "regsimplex/discover.hpp"
#include "regsimplex/geom.hpp"
#include "regsimplex/poly.hpp"

using namespace regsimplex;

static void BM_RelationExact(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto f = poly::build_F(d, Rational(1));
  const auto simplex = geom::build_embedded_simplex(d, Rational(1));
  const auto samples = geom::sample_points(simplex, {1, 64, Rational(3)});
  for (auto _ : state) {
    for (const auto& s : samples) benchmark::DoNotOptimize(poly::eval_on_squares(f, s.distances.squared));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(samples.size()));
}
BENCHMARK(BM_RelationExact)->DenseRange(2, 8, 2);

static void BM_Discover(benchmark::State& state) {
  discover::DiscoveryConfig cfg;
  cfg.d = static_cast<int>(state.range(0));
  cfg.max_degree = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(discover::discover_vanishing(cfg));
}
BENCHMARK(BM_Discover)->Args({2, 4})->Args({3, 4})->Args({2, 5})->Unit(benchmark::kMillisecond);

static void BM_CayleyMengerExact(benchmark::State& state) {
  const auto m = cmgeom::ExactDistanceMatrix::uniform(static_cast<std::size_t>(state.range(0)), Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(cmgeom::cayley_menger_det(m));
}
BENCHMARK(BM_CayleyMengerExact)->DenseRange(3, 10, 1);

static void BM_Reconstruct(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto s = geom::build_cartesian_simplex(d, 1.0);
  std::vector<double> p(static_cast<std::size_t>(d), 0.1);
  const auto dist = geom::distances(s, p);
  for (auto _ : state) benchmark::DoNotOptimize(cmgeom::reconstruct_point(s, dist));
}
BENCHMARK(BM_Reconstruct)->DenseRange(2, 8, 2);
BENCHMARK_MAIN();
