#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "accelflow/pde_kernels.hpp"
#include "accelflow/stencils.hpp"
#include "accelflow/synthetic.hpp"

using namespace accelflow;

namespace {

ScalarField circshift(const ScalarField& f, int sx, int sy) {
  const GridSpec& g = f.grid();
  ScalarField out(g);
  for (int y = 0; y < g.height; ++y)
    for (int x = 0; x < g.width; ++x) out.at(x, y) = f.atp(x - sx, y - sy);
  return out;
}

}  // namespace

TEST_CASE("entropy flux difference: constant, shock pair, rarefaction pair") {
  GridSpec g(8, 8);

  ScalarField c(g);
  std::fill(c.data().begin(), c.data().end(), 2.5);
  ScalarField fc = burgers_flux_diff(c, 1);
  for (int i = 0; i < fc.size(); ++i) CHECK(fc[i] == 0.0);

  // shock pair: vc(x) = +1, vc(x+dx) = -1 gives exactly +2 at x
  ScalarField shock(g);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) shock.at(x, y) = (x < 4) ? 1.0 : -1.0;
  ScalarField fs = burgers_flux_diff(shock, 1);
  CHECK(fs.at(3, 2) == 2.0);

  // rarefaction pair: vc(x) = -1, vc(x+dx) = +1 gives exactly -2
  ScalarField rare(g);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) rare.at(x, y) = (x < 4) ? -1.0 : 1.0;
  ScalarField fr = burgers_flux_diff(rare, 1);
  CHECK(fr.at(3, 5) == -2.0);

  // axis 2 mirrors the same arithmetic along y
  ScalarField shock_y(g);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) shock_y.at(x, y) = (y < 4) ? 1.0 : -1.0;
  CHECK(burgers_flux_diff(shock_y, 2).at(6, 3) == 2.0);
}

TEST_CASE("entropy flux difference is nonpositive at upward zero crossings") {
  GridSpec g(32, 8);
  SeededRng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    // a nondecreasing profile crossing zero once, repeated per row
    std::vector<double> prof(32);
    double acc = -rng.uniform(1.0, 3.0);
    for (int x = 0; x < 32; ++x) {
      acc += rng.uniform(0.0, 0.3);
      prof[x] = acc;
    }
    ScalarField v(g);
    for (int y = 0; y < 8; ++y)
      for (int x = 0; x < 32; ++x) v.at(x, y) = prof[x];
    ScalarField f = burgers_flux_diff(v, 1);
    for (int x = 0; x + 1 < 32; ++x) {
      if (prof[x] < 0.0 && prof[x + 1] > 0.0) CHECK(f.at(x, 0) <= 0.0);
    }
  }
}

TEST_CASE("upwind advection of a constant is exactly zero") {
  GridSpec g(10, 10);
  ScalarField q(g);
  std::fill(q.data().begin(), q.data().end(), 4.2);
  VectorField v = random_smooth_vector(g, 3, 2.0, 9);
  ScalarField out = upwind_advect_scalar(q, v);
  for (int i = 0; i < out.size(); ++i) CHECK(out[i] == 0.0);
}

TEST_CASE("upwind advection selects the one-sided branch by sign") {
  GridSpec g(8, 8);
  ScalarField q(g);
  q.at(3, 2) = 1.0;

  VectorField right(g);
  std::fill(right.xs().begin(), right.xs().end(), 1.0);
  ScalarField fwd = upwind_advect_scalar(q, right);
  // backward difference: v (q(x) - q(x - e1))
  CHECK(fwd.at(3, 2) == 1.0);
  CHECK(fwd.at(4, 2) == -1.0);
  CHECK(fwd.at(2, 2) == 0.0);

  VectorField left(g);
  std::fill(left.xs().begin(), left.xs().end(), -1.0);
  ScalarField bwd = upwind_advect_scalar(q, left);
  // forward difference: v (q(x + e1) - q(x))
  CHECK(bwd.at(2, 2) == -1.0);
  CHECK(bwd.at(3, 2) == 1.0);
  CHECK(bwd.at(4, 2) == 0.0);
}

TEST_CASE("staggered velocity averages to faces") {
  GridSpec g(8, 8);
  VectorField v(g);
  v.x(g.index(2, 3)) = 1.0;
  v.x(g.index(3, 3)) = 3.0;
  StaggeredVelocity s = StaggeredVelocity::from_centered(v);
  CHECK(s.vx_half[g.index(2, 3)] == 2.0);
  CHECK(s.vx_half[g.index(1, 3)] == 0.5);
  CHECK(s.vx_half[g.index(3, 3)] == 1.5);
}

TEST_CASE("continuity: zero velocity and uniform advection are exact fixed points") {
  GridSpec g(10, 10);
  ScalarField rho = random_smooth_image(g, 3, 15);
  ContinuityResult r0 = continuity_step(rho, StaggeredVelocity(g), 0.5);
  CHECK(!r0.negative_density);
  for (int i = 0; i < rho.size(); ++i) CHECK(r0.rho[i] == rho[i]);

  ScalarField uni(g);
  std::fill(uni.data().begin(), uni.data().end(), 1.0 / 100.0);
  StaggeredVelocity c(g);
  std::fill(c.vx_half.begin(), c.vx_half.end(), 0.8);
  ContinuityResult r1 = continuity_step(uni, c, 0.5);
  for (int i = 0; i < uni.size(); ++i) CHECK(r1.rho[i] == uni[i]);
}

TEST_CASE("continuity: donor cell splits an impulse exactly") {
  GridSpec g(8, 8);
  ScalarField rho(g);
  rho.at(2, 4) = 1.0;
  StaggeredVelocity s(g);
  std::fill(s.vx_half.begin(), s.vx_half.end(), 1.0);
  ContinuityResult r = continuity_step(rho, s, 0.5);
  CHECK(r.rho.at(2, 4) == 0.5);
  CHECK(r.rho.at(3, 4) == 0.5);
  double mass = 0.0;
  for (int i = 0; i < r.rho.size(); ++i) mass += r.rho[i];
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("continuity conserves mass and positivity over 1000 steps") {
  GridSpec g(16, 16);
  ScalarField rho(g);
  const double r0 = 1.0 / g.size();
  std::fill(rho.data().begin(), rho.data().end(), r0);
  SeededRng rng(123);
  VectorField v = random_smooth_vector(g, 3, 1.0, rng.next_seed());
  StaggeredVelocity s = StaggeredVelocity::from_centered(v);
  const double dt = 0.9 / (2.0 * max_speed(v));
  double min_rho = 1e9;
  for (int k = 0; k < 1000; ++k) {
    ContinuityResult r = continuity_step(rho, s, dt);
    rho = std::move(r.rho);
    for (int i = 0; i < rho.size(); ++i) min_rho = std::min(min_rho, rho[i]);
  }
  double mass = 0.0;
  for (int i = 0; i < rho.size(); ++i) mass += rho[i];
  CHECK(std::fabs(mass - 1.0) <= 1e-10);
  CHECK(min_rho >= -1e-12);
}

TEST_CASE("continuity flags negative densities from oversized steps") {
  GridSpec g(8, 8);
  ScalarField rho(g);
  rho.at(2, 2) = 1.0;
  StaggeredVelocity s(g);
  std::fill(s.vx_half.begin(), s.vx_half.end(), 1.0);
  ContinuityResult r = continuity_step(rho, s, 1.5);  // removes 150% of the cell
  CHECK(r.negative_density);
}

TEST_CASE("cfl report reproduces the stated bounds") {
  GridSpec g(8, 8);

  // v = 0, alpha = 5, safety = 0.9: vmax floored, dt_gd = 0.9/20
  CflReport r1 = cfl_timestep(VectorField(g), 5.0, 0.9);
  CHECK(r1.vmax == 1e-6);
  CHECK(r1.dt_gd == doctest::Approx(0.045).epsilon(1e-15));

  // max speed 2, alpha = 0, safety = 1: dt_agd = 1/2
  VectorField v2(g);
  std::fill(v2.xs().begin(), v2.xs().end(), 2.0);
  CflReport r2 = cfl_timestep(v2, 0.0, 1.0);
  CHECK(r2.vmax == doctest::Approx(2.0));
  CHECK(r2.dt_agd == doctest::Approx(0.5));

  // alpha = 1, vmax = 1: dt_agd = safety * min(1, 1/4)
  VectorField v3(g);
  std::fill(v3.ys().begin(), v3.ys().end(), 1.0);
  CflReport r3 = cfl_timestep(v3, 1.0, 0.9);
  CHECK(r3.dt_agd == doctest::Approx(0.9 * 0.25));
  CHECK(r3.dt_agd <= r3.dt_gd);
}

TEST_CASE("kernels commute with periodic shifts bitwise") {
  GridSpec g(12, 12);
  SeededRng rng(77);
  ScalarField q = random_smooth_field(g, 3, 1.0, rng.next_seed());
  VectorField v = random_smooth_vector(g, 3, 1.5, rng.next_seed());
  const int sx = 5, sy = 9;

  ScalarField qs = circshift(q, sx, sy);
  VectorField vs(g);
  vs.xs() = circshift(v.x_field(), sx, sy).data();
  vs.ys() = circshift(v.y_field(), sx, sy).data();

  ScalarField a = circshift(burgers_flux_diff(q, 1), sx, sy);
  ScalarField b = burgers_flux_diff(qs, 1);
  for (int i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

  ScalarField ua = circshift(upwind_advect_scalar(q, v), sx, sy);
  ScalarField ub = upwind_advect_scalar(qs, vs);
  for (int i = 0; i < ua.size(); ++i) CHECK(ua[i] == ub[i]);

  ScalarField rho = random_smooth_image(g, 3, rng.next_seed());
  StaggeredVelocity sv = StaggeredVelocity::from_centered(v);
  StaggeredVelocity svs = StaggeredVelocity::from_centered(vs);
  ScalarField ca = circshift(continuity_step(rho, sv, 0.1).rho, sx, sy);
  ScalarField cb = continuity_step(circshift(rho, sx, sy), svs, 0.1).rho;
  for (int i = 0; i < ca.size(); ++i) CHECK(ca[i] == doctest::Approx(cb[i]).epsilon(1e-15));
}
