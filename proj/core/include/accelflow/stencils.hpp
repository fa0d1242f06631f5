#pragma once

#include "accelflow/fields.hpp"

namespace accelflow {

// All stencils wrap periodically and use a fixed per-pixel summation
// order, so identical inputs give bitwise-identical outputs.

/// Central-difference gradient: component i = (f(x+e_i) - f(x-e_i)) / (2 dx).
VectorField grad_central(const ScalarField& f);

/// Central-difference Jacobian of a vector field.
JacobianField jacobian_central(const VectorField& v);

/// div v = d(vx)/dx + d(vy)/dy, central differences.
ScalarField divergence_central(const VectorField& v);

/// 5-point Laplacian: (f(x+e1)+f(x-e1)+f(x+e2)+f(x-e2)-4f(x)) / dx^2.
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& v);
/// Componentwise Laplacian of the displacement u of phi = id + u.
VectorField laplacian_displacement(const MapField& m);

/// Bilinear interpolation, periodic in both the cell index and the
/// fractional part; exact at grid nodes.
double sample_bilinear(const ScalarField& f, double px, double py);

/// I composed with phi: output(x) = I(x + u(x)) via bilinear sampling.
ScalarField warp(const ScalarField& image, const MapField& m);

/// Per-pixel det(I + grad u), central differences on the displacement.
ScalarField det_jacobian(const MapField& m);

/// max over pixels of max(|v(x)|_2, max-abs entry of Dv(x)).
double max_speed(const VectorField& v);

/// Numerical inverse of phi = id + u by per-pixel fixed-point iteration
/// of w(y) = -u(y + w(y)). Contracts where |grad u| < 1; iteration is
/// capped, so the result is best-effort for non-diffeomorphic inputs.
MapField invert_map(const MapField& m, int max_iter = 40, double tol = 1e-12);

}  // namespace accelflow
