#pragma once

#include "accelflow/fields.hpp"

namespace accelflow {

/// Velocity at cell faces: vx_half(x) lives between x and x+e1 (east
/// face), vy_half(x) between x and x+e2 (north face).
struct StaggeredVelocity {
  GridSpec grid;
  std::vector<double> vx_half;
  std::vector<double> vy_half;

  explicit StaggeredVelocity(const GridSpec& g)
      : grid(g), vx_half(g.size(), 0.0), vy_half(g.size(), 0.0) {}

  /// Arithmetic face averaging of a cell-centered field.
  static StaggeredVelocity from_centered(const VectorField& v);
};

struct CflReport {
  double dt_gd = 0.0;
  double dt_agd = 0.0;
  double vmax = 0.0;
};

/// Entropy-scheme approximation of d/dx_axis (vc)^2 (vc is the velocity
/// component matching the axis):
///   [max(vc(x),0)^2 - min(vc(x),0)^2
///    + min(vc(x+e),0)^2 - max(vc(x+e),0)^2] / dx.
/// The caller supplies the 1/2 factor of the componentwise Burgers term.
ScalarField burgers_flux_diff(const ScalarField& vc, int axis);

/// (v . grad q) with one-sided differences chosen per axis by the sign of
/// the advecting component: backward where > 0, forward where < 0, zero
/// contribution where == 0.
ScalarField upwind_advect_scalar(const ScalarField& q, const VectorField& v);

struct ContinuityResult {
  ScalarField rho;
  bool negative_density = false;  // some rho' < -1e-12 (CFL violation symptom)
};

/// Forward-Euler donor-cell update of the continuity equation on the
/// staggered grid. Each face flux is added to one cell and subtracted
/// from its neighbor, so total mass is preserved exactly up to
/// floating-point reassociation.
ContinuityResult continuity_step(const ScalarField& rho, const StaggeredVelocity& vs, double dt);

/// CFL step sizes. vmax = max over pixels of max(|v|_2, max-abs entry of
/// Dv), floored at 1e-6. dt_gd = safety/(4 alpha) (safety*dt_cap when
/// alpha = 0); dt_agd = safety * min(1/(4a), 1/vmax, 1/(4a vmax)) for
/// alpha > 0, safety/vmax when alpha = 0.
CflReport cfl_timestep(const VectorField& v, double alpha, double safety, double dt_cap = 0.25);

}  // namespace accelflow
