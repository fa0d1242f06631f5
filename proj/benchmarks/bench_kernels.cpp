#include <benchmark/benchmark.h>

#include "accelflow/pde_kernels.hpp"
#include "accelflow/potential.hpp"
#include "accelflow/solver.hpp"
#include "accelflow/stencils.hpp"
#include "accelflow/synthetic.hpp"

using namespace accelflow;

namespace {

GridSpec grid(int n) { return GridSpec(n, n); }

void BM_grad_central(benchmark::State& state) {
  ScalarField f = random_smooth_field(grid(static_cast<int>(state.range(0))), 4, 1.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(grad_central(f));
}

void BM_laplacian(benchmark::State& state) {
  ScalarField f = random_smooth_field(grid(static_cast<int>(state.range(0))), 4, 1.0, 2);
  for (auto _ : state) benchmark::DoNotOptimize(laplacian(f));
}

void BM_warp(benchmark::State& state) {
  GridSpec g = grid(static_cast<int>(state.range(0)));
  ScalarField f = random_smooth_field(g, 4, 1.0, 3);
  MapField m(g);
  m.uxs() = random_smooth_field(g, 3, 2.0, 4).data();
  m.uys() = random_smooth_field(g, 3, 2.0, 5).data();
  for (auto _ : state) benchmark::DoNotOptimize(warp(f, m));
}

void BM_burgers_flux(benchmark::State& state) {
  ScalarField v = random_smooth_field(grid(static_cast<int>(state.range(0))), 4, 1.5, 6);
  for (auto _ : state) benchmark::DoNotOptimize(burgers_flux_diff(v, 1));
}

void BM_continuity_step(benchmark::State& state) {
  GridSpec g = grid(static_cast<int>(state.range(0)));
  ScalarField rho(g);
  std::fill(rho.data().begin(), rho.data().end(), 1.0 / g.size());
  StaggeredVelocity s = StaggeredVelocity::from_centered(random_smooth_vector(g, 3, 1.0, 7));
  for (auto _ : state) benchmark::DoNotOptimize(continuity_step(rho, s, 0.05));
}

void BM_hs_grad_warped(benchmark::State& state) {
  GridSpec g = grid(static_cast<int>(state.range(0)));
  HornSchunckPotential P(random_smooth_image(g, 3, 8), random_smooth_image(g, 3, 9), 2.0);
  MapField id = MapField::identity(g);
  for (auto _ : state) benchmark::DoNotOptimize(P.grad_warped(id, id));
}

void BM_agd_step(benchmark::State& state) {
  GridSpec g = grid(static_cast<int>(state.range(0)));
  SquarePair pair = gen_square_pair(g, g.width / 3, g.width / 8, 0);
  HornSchunckPotential P(pair.i0, pair.i1, 5.0);
  SolverConfig cfg;
  cfg.alpha = 5.0;
  SolverState s = initial_state(g);
  for (auto _ : state) benchmark::DoNotOptimize(agd_step(s, P, cfg));
}

}  // namespace

BENCHMARK(BM_grad_central)->Arg(50)->Arg(100)->Arg(200);
BENCHMARK(BM_laplacian)->Arg(50)->Arg(100)->Arg(200);
BENCHMARK(BM_warp)->Arg(50)->Arg(100)->Arg(200);
BENCHMARK(BM_burgers_flux)->Arg(50)->Arg(100)->Arg(200);
BENCHMARK(BM_continuity_step)->Arg(50)->Arg(100)->Arg(200);
BENCHMARK(BM_hs_grad_warped)->Arg(50)->Arg(100);
BENCHMARK(BM_agd_step)->Arg(50)->Arg(100);

BENCHMARK_MAIN();
