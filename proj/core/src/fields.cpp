#include "accelflow/fields.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace accelflow {

GridSpec::GridSpec(int w, int h, double spacing) : width(w), height(h), dx(spacing) {
  if (w < 4 || h < 4) throw std::invalid_argument("GridSpec: width and height must be >= 4");
  if (!(spacing > 0.0)) throw std::invalid_argument("GridSpec: dx must be positive");
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

bool all_finite(const ScalarField& f) { return all_finite(f.data()); }
bool all_finite(const VectorField& v) { return all_finite(v.xs()) && all_finite(v.ys()); }
bool all_finite(const MapField& m) { return all_finite(m.uxs()) && all_finite(m.uys()); }

namespace {

void check_raster(const GridSpec& g, const std::vector<double>& data, const char* what) {
  if (static_cast<int>(data.size()) != g.size())
    throw std::invalid_argument(std::string(what) + ": raster size does not match grid");
  if (!all_finite(data))
    throw std::invalid_argument(std::string(what) + ": raster contains non-finite values");
}

}  // namespace

ScalarField::ScalarField(const GridSpec& g, std::vector<double> data)
    : grid_(g), data_(std::move(data)) {
  check_raster(grid_, data_, "ScalarField");
}

VectorField::VectorField(const GridSpec& g, std::vector<double> vx, std::vector<double> vy)
    : grid_(g), vx_(std::move(vx)), vy_(std::move(vy)) {
  check_raster(grid_, vx_, "VectorField");
  check_raster(grid_, vy_, "VectorField");
}

MapField::MapField(const GridSpec& g, std::vector<double> ux, std::vector<double> uy)
    : grid_(g), ux_(std::move(ux)), uy_(std::move(uy)) {
  check_raster(grid_, ux_, "MapField");
  check_raster(grid_, uy_, "MapField");
}

MapField MapField::translation(const GridSpec& g, double sx, double sy) {
  MapField m(g);
  std::fill(m.uxs().begin(), m.uxs().end(), sx);
  std::fill(m.uys().begin(), m.uys().end(), sy);
  return m;
}

double JacobianField::max_abs_entry(int i) const {
  return std::max(std::max(std::fabs(j11_[i]), std::fabs(j12_[i])),
                  std::max(std::fabs(j21_[i]), std::fabs(j22_[i])));
}

}  // namespace accelflow
