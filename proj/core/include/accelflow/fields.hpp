#pragma once

#include <cstdint>
#include <vector>

namespace accelflow {

/// Uniform periodic 2D raster grid. Coordinates are (x, y) with x the
/// column (axis 1) and y the row (axis 2); rasters are row-major,
/// index = y * width + x. Everything wraps periodically.
struct GridSpec {
  int width = 0;
  int height = 0;
  double dx = 1.0;

  GridSpec() = default;
  GridSpec(int w, int h, double spacing = 1.0);

  bool operator==(const GridSpec&) const = default;

  int size() const { return width * height; }
  double cell_area() const { return dx * dx; }
  int index(int x, int y) const { return y * width + x; }

  int wrap_x(int x) const {
    x %= width;
    return x < 0 ? x + width : x;
  }
  int wrap_y(int y) const {
    y %= height;
    return y < 0 ? y + height : y;
  }
};

class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const GridSpec& g) : grid_(g), data_(g.size(), 0.0) {}
  ScalarField(const GridSpec& g, std::vector<double> data);  // validates

  const GridSpec& grid() const { return grid_; }
  int size() const { return grid_.size(); }

  double operator[](int i) const { return data_[i]; }
  double& operator[](int i) { return data_[i]; }
  double at(int x, int y) const { return data_[grid_.index(x, y)]; }
  double& at(int x, int y) { return data_[grid_.index(x, y)]; }
  /// Periodic access: any integer coordinates.
  double atp(int x, int y) const {
    return data_[grid_.index(grid_.wrap_x(x), grid_.wrap_y(y))];
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

 private:
  GridSpec grid_;
  std::vector<double> data_;
};

/// Vector field (vx, vy) on the grid; used for velocities and gradients.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(const GridSpec& g)
      : grid_(g), vx_(g.size(), 0.0), vy_(g.size(), 0.0) {}
  VectorField(const GridSpec& g, std::vector<double> vx, std::vector<double> vy);

  const GridSpec& grid() const { return grid_; }
  int size() const { return grid_.size(); }

  double x(int i) const { return vx_[i]; }
  double& x(int i) { return vx_[i]; }
  double y(int i) const { return vy_[i]; }
  double& y(int i) { return vy_[i]; }

  const std::vector<double>& xs() const { return vx_; }
  std::vector<double>& xs() { return vx_; }
  const std::vector<double>& ys() const { return vy_; }
  std::vector<double>& ys() { return vy_; }

  // Unchecked copies: steps need these even when a raster has gone
  // non-finite, so the failure is flagged instead of thrown.
  ScalarField x_field() const {
    ScalarField f(grid_);
    f.data() = vx_;
    return f;
  }
  ScalarField y_field() const {
    ScalarField f(grid_);
    f.data() = vy_;
    return f;
  }

 private:
  GridSpec grid_;
  std::vector<double> vx_, vy_;
};

/// A map phi(x) = x + u(x), stored as the periodic displacement u.
/// det(I + grad u) > 0 everywhere is the diffeomorphism certificate,
/// checked on demand (det_jacobian), never on construction.
class MapField {
 public:
  MapField() = default;
  explicit MapField(const GridSpec& g)
      : grid_(g), ux_(g.size(), 0.0), uy_(g.size(), 0.0) {}
  MapField(const GridSpec& g, std::vector<double> ux, std::vector<double> uy);

  static MapField identity(const GridSpec& g) { return MapField(g); }
  /// Constant displacement (a pure translation).
  static MapField translation(const GridSpec& g, double sx, double sy);

  const GridSpec& grid() const { return grid_; }
  int size() const { return grid_.size(); }

  double ux(int i) const { return ux_[i]; }
  double& ux(int i) { return ux_[i]; }
  double uy(int i) const { return uy_[i]; }
  double& uy(int i) { return uy_[i]; }

  const std::vector<double>& uxs() const { return ux_; }
  std::vector<double>& uxs() { return ux_; }
  const std::vector<double>& uys() const { return uy_; }
  std::vector<double>& uys() { return uy_; }

  /// The displacement rasters viewed as a vector field (unchecked copy).
  VectorField displacement() const {
    VectorField v(grid_);
    v.xs() = ux_;
    v.ys() = uy_;
    return v;
  }

 private:
  GridSpec grid_;
  std::vector<double> ux_, uy_;
};

/// Per-pixel 2x2 matrix: j11 = d(comp x)/dx, j12 = d(comp x)/dy,
/// j21 = d(comp y)/dx, j22 = d(comp y)/dy.
class JacobianField {
 public:
  JacobianField() = default;
  explicit JacobianField(const GridSpec& g)
      : grid_(g),
        j11_(g.size(), 0.0),
        j12_(g.size(), 0.0),
        j21_(g.size(), 0.0),
        j22_(g.size(), 0.0) {}

  const GridSpec& grid() const { return grid_; }
  int size() const { return grid_.size(); }

  double j11(int i) const { return j11_[i]; }
  double& j11(int i) { return j11_[i]; }
  double j12(int i) const { return j12_[i]; }
  double& j12(int i) { return j12_[i]; }
  double j21(int i) const { return j21_[i]; }
  double& j21(int i) { return j21_[i]; }
  double j22(int i) const { return j22_[i]; }
  double& j22(int i) { return j22_[i]; }

  double max_abs_entry(int i) const;

 private:
  GridSpec grid_;
  std::vector<double> j11_, j12_, j21_, j22_;
};

bool all_finite(const std::vector<double>& v);
bool all_finite(const ScalarField& f);
bool all_finite(const VectorField& v);
bool all_finite(const MapField& m);

}  // namespace accelflow
