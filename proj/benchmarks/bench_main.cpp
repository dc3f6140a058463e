#include "ietflow/pipeline.hpp"
#include "ietflow/transport.hpp"

#include <benchmark/benchmark.h>

#include <numeric>

using namespace ietflow;

static void BM_IetApply(benchmark::State& state) {
  auto p = LabeledPermutation::parse("8 7 3 2 6 5 4 1");
  std::vector<Rational> lambda;
  for (int i = 0; i < 8; ++i) lambda.push_back(Rational(i + 3, 2 * i + 7));
  Rational total = std::accumulate(lambda.begin(), lambda.end(), Rational(0));
  long k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(iet_apply(p, lambda, total * Rational(k++ % 997, 997)));
}
BENCHMARK(BM_IetApply);

static void BM_RauzyClasses(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(all_rauzy_classes(static_cast<size_t>(state.range(0)), true));
}
BENCHMARK(BM_RauzyClasses)->Arg(5)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

static StepFunction roof() {
  std::vector<Rational> breaks{0, Rational(1, 7), Rational(3, 7), Rational(5, 7)};
  std::vector<QVector> values{QVector::scalar(1), QVector::scalar(-2), QVector::scalar(3), QVector::scalar(0)};
  return StepFunction::from_pieces(1, breaks, values);
}

static void BM_TowerDifference(benchmark::State& state) {
  auto cf = ContinuedFraction::repeated(3, 20);
  auto f = roof();
  size_t n = static_cast<size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tower_difference(f, cf, n));
}
BENCHMARK(BM_TowerDifference)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_TowerDifferenceLaw(benchmark::State& state) {
  auto cf = ContinuedFraction::repeated(25, 40);
  auto f = roof();
  size_t n = static_cast<size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tower_difference_law(f, cf, n));
}
BENCHMARK(BM_TowerDifferenceLaw)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_Pipeline(benchmark::State& state) {
  PipelineConfig cfg;
  cfg.permutation = "6 3 2 5 4 1";
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(cfg));
}
BENCHMARK(BM_Pipeline)->Unit(benchmark::kMillisecond);

static void BM_ElementaryExact(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(elementary_H(Rational(3, 17), Rational(1, 40), Rational(1)));
}
BENCHMARK(BM_ElementaryExact);

static void BM_BisectionTransport(benchmark::State& state) {
  auto cells = random_density(1, 1e-9L / 4, 20, 1);
  size_t depth = static_cast<size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bisection_transport(cells, 1, 1e-9L, depth));
}
BENCHMARK(BM_BisectionTransport)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_SurfaceTransport(benchmark::State& state) {
  SuspensionDatum s;
  s.perm = LabeledPermutation::parse("4 3 2 1");
  s.lambda = {Rational(1, 7), Rational(2, 7), Rational(3, 11), Rational(5, 13)};
  for (int t : {3, 1, -2, -4}) s.tau.push_back(QVector::scalar(t));
  s.basis = FormalBasis(std::vector<std::string>{"1"});
  auto L = layout_surface(surface_triangles(triangulate(polygon_vertices(s))));
  const Rational eps_hat(4, 10000000000LL);
  auto f = perturbed_density(L, eps_hat, 1);
  for (auto _ : state) benchmark::DoNotOptimize(surface_transport(L, f, eps_hat, 6));
}
BENCHMARK(BM_SurfaceTransport)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
