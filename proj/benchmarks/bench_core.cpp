#include <benchmark/benchmark.h>

#include <numbers>

#include "jsnl/evolve.hpp"
#include "jsnl/manybody.hpp"
#include "jsnl/measures.hpp"
#include "jsnl/runner.hpp"

using namespace jsnl;

namespace {

EvolutionConfig bench_config(double l, double dt) {
  EvolutionConfig cfg;
  cfg.params.length_scale = l;
  cfg.dt = dt;
  cfg.quiet = true;
  return cfg;
}

void BM_strang_step_1d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = make_grid(25.6, n, -12.8);
  EvolutionConfig cfg = bench_config(25.6 / n * 8, 1e-4);
  WaveField psi = gaussian_wave(g, 0.0, 1.0, 0.0);
  for (auto _ : state) {
    psi = strang_step(psi, cfg);
    benchmark::DoNotOptimize(psi.values.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_strang_step_1d)->Arg(256)->Arg(1024)->Arg(4096);

void BM_nonlinear_term(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = make_grid(25.6, n, -12.8);
  ModelParams params;
  params.length_scale = 25.6 / n * 8;
  const DensityField rho = random_density(g, 7);
  for (auto _ : state) {
    auto out = nonlinear_term(rho, params);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_nonlinear_term)->Arg(1024)->Arg(4096);

void BM_js_divergence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = make_grid(25.6, n, -12.8);
  const DensityPair pair{random_density(g, 1), random_density(g, 2)};
  for (auto _ : state) benchmark::DoNotOptimize(js_divergence(pair));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_js_divergence)->Arg(4096)->Arg(65536);

void BM_fisher_path_integral(benchmark::State& state) {
  const Grid g = make_grid(16.0, 512, -8.0);
  const DensityPair pair{random_density(g, 3), random_density(g, 4)};
  for (auto _ : state) benchmark::DoNotOptimize(fisher_path_integral(pair, 64));
}
BENCHMARK(BM_fisher_path_integral);

void BM_composite_strang_128sq(benchmark::State& state) {
  const Grid axis = make_grid(16.0, 128, -8.0);
  CompositeGrid grid = make_composite_grid(2, 1, {axis, axis}, {1.0, 1.0}, {0.25});
  CompositeWave psi = product_state(grid, gaussian_wave(axis, -1.0, 0.8, 0.0),
                                    gaussian_wave(axis, 0.5, 0.7, 0.0));
  CompositeEvolutionConfig cfg;
  cfg.dt = 1e-3;
  for (auto _ : state) {
    psi = composite_strang_step(psi, cfg);
    benchmark::DoNotOptimize(psi.values.data());
  }
  state.SetItemsProcessed(state.iterations() * grid.total_points());
}
BENCHMARK(BM_composite_strang_128sq);

}  // namespace

BENCHMARK_MAIN();
