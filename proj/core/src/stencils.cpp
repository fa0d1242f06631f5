#include "accelflow/stencils.hpp"

#include <cmath>
#include <stdexcept>

namespace accelflow {

namespace {

// Central difference along x of a raw raster, periodic.
void diff_x(const GridSpec& g, const std::vector<double>& f, std::vector<double>& out) {
  const int w = g.width, h = g.height;
  const double inv2dx = 1.0 / (2.0 * g.dx);
  for (int y = 0; y < h; ++y) {
    const int row = y * w;
    for (int x = 0; x < w; ++x) {
      const int xp = (x + 1 == w) ? 0 : x + 1;
      const int xm = (x == 0) ? w - 1 : x - 1;
      out[row + x] = (f[row + xp] - f[row + xm]) * inv2dx;
    }
  }
}

void diff_y(const GridSpec& g, const std::vector<double>& f, std::vector<double>& out) {
  const int w = g.width, h = g.height;
  const double inv2dx = 1.0 / (2.0 * g.dx);
  for (int y = 0; y < h; ++y) {
    const int yp = (y + 1 == h) ? 0 : y + 1;
    const int ym = (y == 0) ? h - 1 : y - 1;
    for (int x = 0; x < w; ++x) {
      out[y * w + x] = (f[yp * w + x] - f[ym * w + x]) * inv2dx;
    }
  }
}

void laplacian_raster(const GridSpec& g, const std::vector<double>& f, std::vector<double>& out) {
  const int w = g.width, h = g.height;
  const double invdx2 = 1.0 / (g.dx * g.dx);
  for (int y = 0; y < h; ++y) {
    const int yp = (y + 1 == h) ? 0 : y + 1;
    const int ym = (y == 0) ? h - 1 : y - 1;
    for (int x = 0; x < w; ++x) {
      const int xp = (x + 1 == w) ? 0 : x + 1;
      const int xm = (x == 0) ? w - 1 : x - 1;
      const int i = y * w + x;
      out[i] = (f[y * w + xp] + f[y * w + xm] + f[yp * w + x] + f[ym * w + x] - 4.0 * f[i]) * invdx2;
    }
  }
}

}  // namespace

VectorField grad_central(const ScalarField& f) {
  VectorField g(f.grid());
  diff_x(f.grid(), f.data(), g.xs());
  diff_y(f.grid(), f.data(), g.ys());
  return g;
}

JacobianField jacobian_central(const VectorField& v) {
  JacobianField j(v.grid());
  const GridSpec& g = v.grid();
  const int w = g.width, h = g.height;
  const double inv2dx = 1.0 / (2.0 * g.dx);
  for (int y = 0; y < h; ++y) {
    const int yp = (y + 1 == h) ? 0 : y + 1;
    const int ym = (y == 0) ? h - 1 : y - 1;
    for (int x = 0; x < w; ++x) {
      const int xp = (x + 1 == w) ? 0 : x + 1;
      const int xm = (x == 0) ? w - 1 : x - 1;
      const int i = y * w + x;
      j.j11(i) = (v.x(y * w + xp) - v.x(y * w + xm)) * inv2dx;
      j.j12(i) = (v.x(yp * w + x) - v.x(ym * w + x)) * inv2dx;
      j.j21(i) = (v.y(y * w + xp) - v.y(y * w + xm)) * inv2dx;
      j.j22(i) = (v.y(yp * w + x) - v.y(ym * w + x)) * inv2dx;
    }
  }
  return j;
}

ScalarField divergence_central(const VectorField& v) {
  ScalarField d(v.grid());
  const GridSpec& g = v.grid();
  const int w = g.width, h = g.height;
  const double inv2dx = 1.0 / (2.0 * g.dx);
  for (int y = 0; y < h; ++y) {
    const int yp = (y + 1 == h) ? 0 : y + 1;
    const int ym = (y == 0) ? h - 1 : y - 1;
    for (int x = 0; x < w; ++x) {
      const int xp = (x + 1 == w) ? 0 : x + 1;
      const int xm = (x == 0) ? w - 1 : x - 1;
      d[y * w + x] = (v.x(y * w + xp) - v.x(y * w + xm)) * inv2dx +
                     (v.y(yp * w + x) - v.y(ym * w + x)) * inv2dx;
    }
  }
  return d;
}

ScalarField laplacian(const ScalarField& f) {
  ScalarField out(f.grid());
  laplacian_raster(f.grid(), f.data(), out.data());
  return out;
}

VectorField laplacian(const VectorField& v) {
  VectorField out(v.grid());
  laplacian_raster(v.grid(), v.xs(), out.xs());
  laplacian_raster(v.grid(), v.ys(), out.ys());
  return out;
}

VectorField laplacian_displacement(const MapField& m) {
  VectorField out(m.grid());
  laplacian_raster(m.grid(), m.uxs(), out.xs());
  laplacian_raster(m.grid(), m.uys(), out.ys());
  return out;
}

double sample_bilinear(const ScalarField& f, double px, double py) {
  const GridSpec& g = f.grid();
  const double x0f = std::floor(px);
  const double y0f = std::floor(py);
  const double fx = px - x0f;
  const double fy = py - y0f;
  const int x0 = g.wrap_x(static_cast<int>(x0f));
  const int y0 = g.wrap_y(static_cast<int>(y0f));
  const int x1 = (x0 + 1 == g.width) ? 0 : x0 + 1;
  const int y1 = (y0 + 1 == g.height) ? 0 : y0 + 1;
  return (1.0 - fx) * (1.0 - fy) * f.at(x0, y0) + fx * (1.0 - fy) * f.at(x1, y0) +
         (1.0 - fx) * fy * f.at(x0, y1) + fx * fy * f.at(x1, y1);
}

ScalarField warp(const ScalarField& image, const MapField& m) {
  if (!(image.grid() == m.grid())) throw std::invalid_argument("warp: grid mismatch");
  ScalarField out(image.grid());
  const GridSpec& g = image.grid();
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) {
      const int i = y * g.width + x;
      out[i] = sample_bilinear(image, x + m.ux(i), y + m.uy(i));
    }
  }
  return out;
}

ScalarField det_jacobian(const MapField& m) {
  const JacobianField j = jacobian_central(m.displacement());
  ScalarField det(m.grid());
  for (int i = 0; i < j.size(); ++i) {
    det[i] = (1.0 + j.j11(i)) * (1.0 + j.j22(i)) - j.j12(i) * j.j21(i);
  }
  return det;
}

MapField invert_map(const MapField& m, int max_iter, double tol) {
  const GridSpec& g = m.grid();
  MapField inv(g);
  const ScalarField ux = m.displacement().x_field();
  const ScalarField uy = m.displacement().y_field();
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) {
      const int i = y * g.width + x;
      double wx = 0.0, wy = 0.0;
      for (int k = 0; k < max_iter; ++k) {
        const double nx = -sample_bilinear(ux, x + wx, y + wy);
        const double ny = -sample_bilinear(uy, x + wx, y + wy);
        const double delta = std::fabs(nx - wx) + std::fabs(ny - wy);
        wx = nx;
        wy = ny;
        if (delta < tol) break;
      }
      inv.ux(i) = wx;
      inv.uy(i) = wy;
    }
  }
  return inv;
}

double max_speed(const VectorField& v) {
  const JacobianField j = jacobian_central(v);
  double vmax = 0.0;
  for (int i = 0; i < v.size(); ++i) {
    const double speed = std::hypot(v.x(i), v.y(i));
    const double dv = j.max_abs_entry(i);
    if (speed > vmax) vmax = speed;
    if (dv > vmax) vmax = dv;
  }
  return vmax;
}

}  // namespace accelflow
