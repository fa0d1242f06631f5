#pragma once

#include <cstdint>

#include "accelflow/fields.hpp"

namespace accelflow {

/// A registration objective U(phi) together with its functional gradients.
/// grad_warped is the L2 gradient on the warped domain (used by the
/// velocity evolutions); grad_unwarped is its pullback to the un-warped
/// domain, [grad U o phi] det(grad phi). Any implementation plugs into
/// every solver scheme.
class Potential {
 public:
  virtual ~Potential() = default;
  virtual const GridSpec& grid() const = 0;
  virtual double value(const MapField& phi) const = 0;
  virtual VectorField grad_unwarped(const MapField& phi) const = 0;
  virtual VectorField grad_warped(const MapField& phi, const MapField& psi) const = 0;
};

/// Horn & Schunck energy:
///   U(phi) = 1/2 sum (I1(phi(x)) - I0(x))^2 dx^2
///          + 1/2 alpha sum |grad u|^2 dx^2,   u = phi - id,
/// with |grad u|^2 the Frobenius norm of the forward-difference
/// displacement Jacobian, so that the discrete Euler-Lagrange term is
/// exactly -alpha * (5-point Laplacian of u). Intensities are in [0,1].
class HornSchunckPotential final : public Potential {
 public:
  HornSchunckPotential(ScalarField i0, ScalarField i1, double alpha);

  const GridSpec& grid() const override { return i0_.grid(); }
  double alpha() const { return alpha_; }
  const ScalarField& i0() const { return i0_; }
  const ScalarField& i1() const { return i1_; }

  double value(const MapField& phi) const override;
  double data_term(const MapField& phi) const;

  /// (I1 o phi - I0) (grad I1) o phi - alpha Lap(u); grad I1 is the
  /// precomputed central-difference gradient, sampled at phi(x).
  VectorField grad_unwarped(const MapField& phi) const override;

  /// [(I1 - I0 o psi) grad I1 - alpha (Lap u) o psi] det(grad psi),
  /// psi the maintained inverse of phi.
  VectorField grad_warped(const MapField& phi, const MapField& psi) const override;

 private:
  ScalarField i0_, i1_;
  VectorField grad_i1_;
  double alpha_ = 0.0;
};

/// Relative error |FD - IP| / max(|FD|, |IP|, 1e-12) between the central
/// finite difference of P.value along dphi and the inner product
/// sum grad~U . dphi dx^2.
double grad_check(const Potential& P, const MapField& phi, const VectorField& dphi, double eps);

struct GradCheckReport {
  double max_rel_err = 0.0;
  int pairs = 0;
};

/// Seeded gradient-oracle suite: `pairs` random (phi, dphi) draws with
/// integer-displacement band-limited phi and smooth band-limited dphi,
/// against a random smooth image pair. Returns the worst grad_check error.
GradCheckReport run_grad_check(const GridSpec& g, double alpha, std::uint64_t seed,
                               int pairs = 100, double eps = 1e-5);

}  // namespace accelflow
