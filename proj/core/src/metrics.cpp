#include "accelflow/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "accelflow/stencils.hpp"

namespace accelflow {

double endpoint_error(const MapField& m, const MapField& gt) {
  if (!(m.grid() == gt.grid())) throw std::invalid_argument("endpoint_error: grid mismatch");
  double sum = 0.0;
  for (int i = 0; i < m.size(); ++i) {
    sum += std::hypot(m.ux(i) - gt.ux(i), m.uy(i) - gt.uy(i));
  }
  return sum / m.size();
}

double endpoint_error(const MapField& m, const MapField& gt,
                      const std::vector<std::uint8_t>& mask) {
  if (!(m.grid() == gt.grid())) throw std::invalid_argument("endpoint_error: grid mismatch");
  if (static_cast<int>(mask.size()) != m.size())
    throw std::invalid_argument("endpoint_error: mask size mismatch");
  double sum = 0.0;
  int n = 0;
  for (int i = 0; i < m.size(); ++i) {
    if (!mask[i]) continue;
    sum += std::hypot(m.ux(i) - gt.ux(i), m.uy(i) - gt.uy(i));
    ++n;
  }
  if (n == 0) throw std::invalid_argument("endpoint_error: empty mask");
  return sum / n;
}

ReconError recon_error(const ScalarField& i0, const ScalarField& i1, const MapField& m) {
  if (!(i0.grid() == i1.grid()) || !(i0.grid() == m.grid()))
    throw std::invalid_argument("recon_error: grid mismatch");
  const ScalarField warped = warp(i1, m);
  double sum = 0.0;
  for (int i = 0; i < warped.size(); ++i) {
    const double r = warped[i] - i0[i];
    sum += r * r;
  }
  ReconError e;
  e.data_term = 0.5 * sum * i0.grid().cell_area();
  e.l2_norm = std::sqrt(2.0 * e.data_term);
  return e;
}

}  // namespace accelflow
