#include <benchmark/benchmark.h>

#include <string>
#include <variant>
#include <vector>

#include "nilgeo/construct.hpp"
#include "nilgeo/group.hpp"
#include "nilgeo/metric_geometry.hpp"
#include "nilgeo/reductive.hpp"

namespace {

nilgeo::MetricNilLieAlgebra metric(const std::string& id) {
  return std::get<nilgeo::MetricNilLieAlgebra>(nilgeo::example_catalog(id));
}

const char* const kIds[] = {"h3_riemannian", "r_x_h3_lorentz", "heisenberg_2n1", "free3step2gen",
                            "dim6_cotangent_h3"};

void BM_LeviCivitaTable(benchmark::State& state) {
  const auto m = metric(kIds[state.range(0)]);
  for (auto _ : state) {
    nilgeo::LeviCivita lc(m);
    benchmark::DoNotOptimize(lc);
  }
  state.SetLabel(kIds[state.range(0)]);
}
BENCHMARK(BM_LeviCivitaTable)->DenseRange(0, 4);

void BM_FullCurvature(benchmark::State& state) {
  const auto m = metric(kIds[state.range(0)]);
  const nilgeo::LeviCivita lc(m);
  const std::size_t n = m.dim();
  for (auto _ : state) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        benchmark::DoNotOptimize(lc.curvature_operator(nilgeo::unit_vector(n, a), nilgeo::unit_vector(n, b)));
  }
  state.SetLabel(kIds[state.range(0)]);
}
BENCHMARK(BM_FullCurvature)->DenseRange(0, 4);

void BM_Ricci(benchmark::State& state) {
  const auto m = metric(kIds[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(nilgeo::ricci(m));
  state.SetLabel(kIds[state.range(0)]);
}
BENCHMARK(BM_Ricci)->DenseRange(0, 2);

void BM_NaturallyReductive(benchmark::State& state) {
  const auto m = metric(kIds[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(nilgeo::naturally_reductive_check(m));
  state.SetLabel(kIds[state.range(0)]);
}
BENCHMARK(BM_NaturallyReductive)->DenseRange(0, 2);

void BM_CorankDecomposition(benchmark::State& state) {
  const auto m = metric("dim6_cotangent_h3");
  for (auto _ : state) benchmark::DoNotOptimize(nilgeo::corank_decomposition(m));
}
BENCHMARK(BM_CorankDecomposition);

void BM_Geodesic(benchmark::State& state) {
  const auto m = metric("h3_riemannian");
  const auto s = nilgeo::center_splitting(m);
  std::vector<double> grid;
  for (int i = 0; i <= state.range(0); ++i) grid.push_back(5.0 * i / static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nilgeo::geodesic(m, s, {0.5}, {1.0, -0.25}, grid));
}
BENCHMARK(BM_Geodesic)->Arg(10)->Arg(50)->Arg(200);

void BM_LatticeClosure(benchmark::State& state) {
  const auto m = metric("dim6_cotangent_h3");
  const nilgeo::LatticeSpec spec{{1, 1, 1, 2, 1, 2}};
  for (auto _ : state) benchmark::DoNotOptimize(nilgeo::lattice_closure_check(m.algebra(), spec));
}
BENCHMARK(BM_LatticeClosure);

}  // namespace

BENCHMARK_MAIN();
