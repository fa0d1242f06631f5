#include "accelflow/pde_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "accelflow/stencils.hpp"

namespace accelflow {

StaggeredVelocity StaggeredVelocity::from_centered(const VectorField& v) {
  StaggeredVelocity s(v.grid());
  const GridSpec& g = v.grid();
  const int w = g.width, h = g.height;
  for (int y = 0; y < h; ++y) {
    const int yp = (y + 1 == h) ? 0 : y + 1;
    for (int x = 0; x < w; ++x) {
      const int xp = (x + 1 == w) ? 0 : x + 1;
      const int i = y * w + x;
      s.vx_half[i] = 0.5 * (v.x(i) + v.x(y * w + xp));
      s.vy_half[i] = 0.5 * (v.y(i) + v.y(yp * w + x));
    }
  }
  return s;
}

ScalarField burgers_flux_diff(const ScalarField& vc, int axis) {
  if (axis != 1 && axis != 2) throw std::invalid_argument("burgers_flux_diff: axis must be 1 or 2");
  const GridSpec& g = vc.grid();
  ScalarField out(g);
  const int w = g.width, h = g.height;
  const double invdx = 1.0 / g.dx;
  for (int y = 0; y < h; ++y) {
    const int yp = (y + 1 == h) ? 0 : y + 1;
    for (int x = 0; x < w; ++x) {
      const int xp = (x + 1 == w) ? 0 : x + 1;
      const int i = y * w + x;
      const int in = (axis == 1) ? y * w + xp : yp * w + x;
      const double here = vc[i];
      const double next = vc[in];
      const double hp = std::max(here, 0.0), hm = std::min(here, 0.0);
      const double np = std::max(next, 0.0), nm = std::min(next, 0.0);
      out[i] = (hp * hp - hm * hm + nm * nm - np * np) * invdx;
    }
  }
  return out;
}

ScalarField upwind_advect_scalar(const ScalarField& q, const VectorField& v) {
  if (!(q.grid() == v.grid())) throw std::invalid_argument("upwind_advect_scalar: grid mismatch");
  const GridSpec& g = q.grid();
  ScalarField out(g);
  const int w = g.width, h = g.height;
  const double invdx = 1.0 / g.dx;
  for (int y = 0; y < h; ++y) {
    const int yp = (y + 1 == h) ? 0 : y + 1;
    const int ym = (y == 0) ? h - 1 : y - 1;
    for (int x = 0; x < w; ++x) {
      const int xp = (x + 1 == w) ? 0 : x + 1;
      const int xm = (x == 0) ? w - 1 : x - 1;
      const int i = y * w + x;
      double acc = 0.0;
      const double ax = v.x(i);
      if (ax > 0.0)
        acc += ax * (q[i] - q[y * w + xm]);
      else if (ax < 0.0)
        acc += ax * (q[y * w + xp] - q[i]);
      const double ay = v.y(i);
      if (ay > 0.0)
        acc += ay * (q[i] - q[ym * w + x]);
      else if (ay < 0.0)
        acc += ay * (q[yp * w + x] - q[i]);
      out[i] = acc * invdx;
    }
  }
  return out;
}

ContinuityResult continuity_step(const ScalarField& rho, const StaggeredVelocity& vs, double dt) {
  if (!(rho.grid() == vs.grid)) throw std::invalid_argument("continuity_step: grid mismatch");
  const GridSpec& g = rho.grid();
  const int w = g.width, h = g.height;
  const double scale = dt / g.dx;
  std::vector<double> delta(g.size(), 0.0);
  // Face-by-face in fixed raster order: each flux leaves one cell and
  // enters its neighbor.
  for (int y = 0; y < h; ++y) {
    const int yp = (y + 1 == h) ? 0 : y + 1;
    for (int x = 0; x < w; ++x) {
      const int xp = (x + 1 == w) ? 0 : x + 1;
      const int i = y * w + x;
      const double ve = vs.vx_half[i];
      const double fe = ve * (ve > 0.0 ? rho[i] : rho[y * w + xp]);
      delta[i] -= fe;
      delta[y * w + xp] += fe;
      const double vn = vs.vy_half[i];
      const double fn = vn * (vn > 0.0 ? rho[i] : rho[yp * w + x]);
      delta[i] -= fn;
      delta[yp * w + x] += fn;
    }
  }
  ContinuityResult res{ScalarField(g), false};
  for (int i = 0; i < g.size(); ++i) {
    const double r = rho[i] + scale * delta[i];
    res.rho[i] = r;
    if (r < -1e-12) res.negative_density = true;
  }
  return res;
}

CflReport cfl_timestep(const VectorField& v, double alpha, double safety, double dt_cap) {
  if (!(safety > 0.0 && safety <= 1.0))
    throw std::invalid_argument("cfl_timestep: safety must be in (0, 1]");
  CflReport rep;
  rep.vmax = std::max(max_speed(v), 1e-6);
  if (alpha > 0.0) {
    rep.dt_gd = safety / (4.0 * alpha);
    rep.dt_agd = safety * std::min({1.0 / (4.0 * alpha), 1.0 / rep.vmax,
                                    1.0 / (4.0 * alpha * rep.vmax)});
  } else {
    rep.dt_gd = safety * dt_cap;
    rep.dt_agd = safety / rep.vmax;
  }
  return rep;
}

}  // namespace accelflow
