#pragma once

#include <string>
#include <vector>

#include "accelflow/fields.hpp"
#include "accelflow/potential.hpp"

namespace accelflow {

enum class Scheme { agd, agd_nodissip, epdiff, gd, wave };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);  // throws on unknown name

struct SolverConfig {
  Scheme scheme = Scheme::agd;
  double alpha = 0.0;
  int p = 2;       // schedule exponent
  double C = 0.0;  // schedule constant; 0 = auto: the uniform mass
                   // density 1/(W H dx^2)
  double safety = 0.9;  // CFL safety factor
  double tol = 1e-4;    // convergence threshold on the map increment, pixels
  int max_iters = 100000;
  double rho_floor = -1.0;  // clamp for 1/rho; < 0 means auto: 1e-8/(W*H)
  double eps_visc = 0.0;    // optional velocity diffusion coefficient
  double t0 = 0.0;          // time-origin offset for the friction term
  double dt_cap = 0.25;
};

/// The tuple evolved by one scheme step. Total mass sum(rho) dx^2 stays
/// 1 (to 1e-8) and rho >= 0 up to -1e-12 roundoff.
struct SolverState {
  double t = 0.0;
  VectorField v;
  MapField phi;
  MapField psi;
  ScalarField rho;
};

struct TraceRecord {
  int iter = 0;
  double t = 0.0;
  double potential = 0.0;
  double kinetic = 0.0;
  double total = 0.0;
  double dt = 0.0;
  double map_increment = 0.0;  // max-norm of the phi change, pixels
};

/// sum 1/2 rho |v|^2 dx^2 (rho clamped at 0 against -1e-12 roundoff).
double kinetic_energy(const ScalarField& rho, const VectorField& v);

/// cfg.C, or the density-scaled constant 1/(W H dx^2) when cfg.C = 0.
/// The forcing -C p^2 t^(p-2) grad U / rho is O(grad U) under the auto
/// value; the bare 1/4 with total mass 1 makes the coupled system too
/// stiff for the forward-Euler velocity schemes.
double effective_schedule_constant(const SolverConfig& cfg, const GridSpec& g);

/// phi = psi = id, v = 0, rho = 1/(W H dx^2), t = 0.
SolverState initial_state(const GridSpec& g);

struct StepOutcome {
  SolverState state;
  double dt = 0.0;
  bool ok = true;  // false: negative density or non-finite raster (CFL symptom)
};

/// One forward-Euler step of the dissipative (Nesterov-schedule) system:
/// friction (p+1)/(t+dt), forcing -C p^2 (t+dt)^(p-2) grad U / rho.
/// Jacobi-style: every sub-update reads the pre-step fields.
StepOutcome agd_step(const SolverState& s, const Potential& P, const SolverConfig& cfg,
                     double dt_scale = 1.0);

/// agd_step without friction or schedule factors (forcing -grad U / rho).
StepOutcome nondissip_step(const SolverState& s, const Potential& P, const SolverConfig& cfg,
                           double dt_scale = 1.0);

/// Constant-density geodesic form: dv/dt = -(Dv)v - (grad v)v - v div v
/// - grad U / rho; no density update.
StepOutcome epdiff_step(const SolverState& s, const Potential& P, const SolverConfig& cfg,
                        double dt_scale = 1.0);

/// v = -grad U(phi) each step, maps transported, dt = safety/(4 alpha); no
/// momentum, no density evolution.
StepOutcome gd_step(const SolverState& s, const Potential& P, const SolverConfig& cfg,
                    double dt_scale = 1.0);

/// Leapfrog update of the damped wave form of the second-order map PDE:
///   phi_next = phi + (phi - phi_prev)(1 - 3dt/2t)/(1 + 3dt/2t)
///            - dt^2 grad~U(phi) / (rho0 (1 + 3dt/2t))
MapField wave_step(const MapField& phi_prev, const MapField& phi_curr, double t,
                   const Potential& P, const SolverConfig& cfg);

/// Fixed step size of the wave scheme: safety * min(1, sqrt(rho0/(4 alpha))).
double wave_dt(const GridSpec& g, const SolverConfig& cfg);

enum class RunStatus { converged, max_iters, aborted };

struct RunResult {
  SolverState state;
  std::vector<TraceRecord> trace;
  bool converged = false;
  RunStatus status = RunStatus::max_iters;
};

/// Full optimization run: initializes, iterates the selected scheme,
/// stops when the map increment stays below tol for 5 consecutive
/// iterations or at max_iters. A flagged step is retried once at half
/// step size, then the run aborts with the last valid state attached.
RunResult run(const ScalarField& i0, const ScalarField& i1, const SolverConfig& cfg);

/// Mean over pixels of the periodic distance |psi(phi(x)) - x|.
double inverse_consistency(const MapField& phi, const MapField& psi);

}  // namespace accelflow
