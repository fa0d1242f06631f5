#include "accelflow/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace accelflow {

namespace {

void paint_rect(ScalarField& f, int x0, int y0, int rw, int rh) {
  const GridSpec& g = f.grid();
  if (x0 < 0 || y0 < 0 || x0 + rw > g.width || y0 + rh > g.height)
    throw std::invalid_argument("synthetic: rectangle out of bounds");
  for (int y = y0; y < y0 + rh; ++y)
    for (int x = x0; x < x0 + rw; ++x) f.at(x, y) = 1.0;
}

}  // namespace

SquarePair gen_square_pair(const GridSpec& g, int square_size, int shift_x, int shift_y) {
  if (square_size <= 0) throw std::invalid_argument("gen_square_pair: square_size must be > 0");
  const int x0 = (g.width - square_size) / 2;
  const int y0 = (g.height - square_size) / 2;
  SquarePair p{ScalarField(g), ScalarField(g), MapField(g)};
  paint_rect(p.i0, x0, y0, square_size, square_size);
  paint_rect(p.i1, x0 + shift_x, y0 + shift_y, square_size, square_size);
  p.gt_flow = MapField::translation(g, shift_x, shift_y);
  return p;
}

RectPair gen_rect_pair(const GridSpec& g, int square_size, int rect_w, int rect_h, int shift_x) {
  if (square_size <= 0 || rect_w <= 0 || rect_h <= 0)
    throw std::invalid_argument("gen_rect_pair: shape dims must be > 0");
  RectPair p{ScalarField(g), ScalarField(g)};
  paint_rect(p.i0, (g.width - square_size) / 2, (g.height - square_size) / 2, square_size,
             square_size);
  paint_rect(p.i1, (g.width - rect_w) / 2 + shift_x, (g.height - rect_h) / 2, rect_w, rect_h);
  return p;
}

ScalarField add_salt_pepper(const ScalarField& image, double level, std::uint64_t seed) {
  if (!(level >= 0.0 && level <= 1.0))
    throw std::invalid_argument("add_salt_pepper: level must be in [0, 1]");
  ScalarField out = image;
  SeededRng rng(seed);
  for (int i = 0; i < out.size(); ++i) {
    if (rng.u01() < level) out[i] = rng.u01() < 0.5 ? 0.0 : 1.0;
  }
  return out;
}

ScalarField random_smooth_field(const GridSpec& g, int kmax, double amplitude,
                                std::uint64_t seed) {
  SeededRng rng(seed);
  ScalarField f(g);
  const double tau = 2.0 * std::numbers::pi;
  for (int kx = 0; kx <= kmax; ++kx) {
    for (int ky = 0; ky <= kmax; ++ky) {
      if (kx == 0 && ky == 0) continue;
      const double a = rng.uniform(-1.0, 1.0);
      const double phase = rng.uniform(0.0, tau);
      const double wx = tau * kx / g.width;
      const double wy = tau * ky / g.height;
      for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x)
          f.at(x, y) += a * std::cos(wx * x + wy * y + phase);
    }
  }
  double peak = 0.0;
  for (int i = 0; i < f.size(); ++i) peak = std::max(peak, std::fabs(f[i]));
  if (peak > 0.0) {
    const double s = amplitude / peak;
    for (int i = 0; i < f.size(); ++i) f[i] *= s;
  }
  return f;
}

ScalarField random_smooth_image(const GridSpec& g, int kmax, std::uint64_t seed) {
  ScalarField f = random_smooth_field(g, kmax, 0.5, seed);
  for (int i = 0; i < f.size(); ++i) f[i] = std::clamp(0.5 + f[i], 0.0, 1.0);
  return f;
}

VectorField random_smooth_vector(const GridSpec& g, int kmax, double amplitude,
                                 std::uint64_t seed) {
  SeededRng rng(seed);
  VectorField v(g);
  v.xs() = random_smooth_field(g, kmax, amplitude, rng.next_seed()).data();
  v.ys() = random_smooth_field(g, kmax, amplitude, rng.next_seed()).data();
  return v;
}

MapField random_integer_map(const GridSpec& g, int kmax, double amplitude, std::uint64_t seed) {
  SeededRng rng(seed);
  MapField m(g);
  const ScalarField fx = random_smooth_field(g, kmax, amplitude, rng.next_seed());
  const ScalarField fy = random_smooth_field(g, kmax, amplitude, rng.next_seed());
  for (int i = 0; i < m.size(); ++i) {
    m.ux(i) = std::round(fx[i]);
    m.uy(i) = std::round(fy[i]);
  }
  return m;
}

}  // namespace accelflow
