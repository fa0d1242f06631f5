#include "accelflow/solver.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "accelflow/pde_kernels.hpp"
#include "accelflow/stencils.hpp"

namespace accelflow {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::agd: return "agd";
    case Scheme::agd_nodissip: return "agd_nodissip";
    case Scheme::epdiff: return "epdiff";
    case Scheme::gd: return "gd";
    case Scheme::wave: return "wave";
  }
  return "?";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "agd") return Scheme::agd;
  if (name == "agd_nodissip") return Scheme::agd_nodissip;
  if (name == "epdiff") return Scheme::epdiff;
  if (name == "gd") return Scheme::gd;
  if (name == "wave") return Scheme::wave;
  throw std::invalid_argument("unknown scheme: " + name);
}

double kinetic_energy(const ScalarField& rho, const VectorField& v) {
  if (!(rho.grid() == v.grid())) throw std::invalid_argument("kinetic_energy: grid mismatch");
  double sum = 0.0;
  for (int i = 0; i < rho.size(); ++i) {
    const double r = rho[i] > 0.0 ? rho[i] : 0.0;
    sum += r * (v.x(i) * v.x(i) + v.y(i) * v.y(i));
  }
  return 0.5 * sum * rho.grid().cell_area();
}

double effective_schedule_constant(const SolverConfig& cfg, const GridSpec& g) {
  return cfg.C > 0.0 ? cfg.C : 1.0 / (g.width * g.height * g.cell_area());
}

SolverState initial_state(const GridSpec& g) {
  SolverState s;
  s.t = 0.0;
  s.v = VectorField(g);
  s.phi = MapField::identity(g);
  s.psi = MapField::identity(g);
  s.rho = ScalarField(g);
  const double r0 = 1.0 / (g.width * g.height * g.cell_area());
  std::fill(s.rho.data().begin(), s.rho.data().end(), r0);
  return s;
}

namespace {

double rho_floor_value(const SolverConfig& cfg, const GridSpec& g) {
  return cfg.rho_floor >= 0.0 ? cfg.rho_floor : 1e-8 / (g.width * g.height);
}

bool state_finite(const SolverState& s) {
  return all_finite(s.v) && all_finite(s.phi) && all_finite(s.psi) && all_finite(s.rho);
}

/// psi <- psi - dt (Dpsi) v with Dpsi = I + Dw: per component
/// w' = w - dt (v_c + upwind(v . grad w_c)).
MapField transport_inverse(const MapField& psi, const VectorField& v, double dt) {
  MapField next(psi.grid());
  const ScalarField ax = upwind_advect_scalar(psi.displacement().x_field(), v);
  const ScalarField ay = upwind_advect_scalar(psi.displacement().y_field(), v);
  for (int i = 0; i < psi.size(); ++i) {
    next.ux(i) = psi.ux(i) - dt * (v.x(i) + ax[i]);
    next.uy(i) = psi.uy(i) - dt * (v.y(i) + ay[i]);
  }
  return next;
}

/// phi(x) <- phi(x) + dt v(phi(x)), v sampled bilinearly.
MapField advance_forward(const MapField& phi, const VectorField& v, double dt) {
  MapField next(phi.grid());
  const GridSpec& g = phi.grid();
  const ScalarField vx = v.x_field();
  const ScalarField vy = v.y_field();
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) {
      const int i = y * g.width + x;
      const double px = x + phi.ux(i);
      const double py = y + phi.uy(i);
      next.ux(i) = phi.ux(i) + dt * sample_bilinear(vx, px, py);
      next.uy(i) = phi.uy(i) + dt * sample_bilinear(vy, px, py);
    }
  }
  return next;
}

enum class VelocityForm { dissipative, nondissipative, epdiff };

/// Forcing field of the velocity evolutions: the warped-domain gradient
/// assembled as the pullback [grad~U o psi] det(grad psi). Evaluating the
/// warped formula directly composes the raw (noisy) images at scattered
/// points and tangles the map once speckle forcing appears; sampling the
/// smooth un-warped gradient raster is the stable route to the same
/// object. A non-positive Jacobian (folded psi) contributes nothing.
VectorField warped_forcing(const SolverState& s, const Potential& P) {
  const GridSpec& g = s.phi.grid();
  const VectorField gu = P.grad_unwarped(s.phi);
  const ScalarField det = det_jacobian(s.psi);
  const ScalarField gx = gu.x_field();
  const ScalarField gy = gu.y_field();
  VectorField out(g);
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) {
      const int i = y * g.width + x;
      const double qx = x + s.psi.ux(i);
      const double qy = y + s.psi.uy(i);
      const double dj = det[i] > 0.0 ? det[i] : 0.0;
      out.x(i) = sample_bilinear(gx, qx, qy) * dj;
      out.y(i) = sample_bilinear(gy, qx, qy) * dj;
    }
  }
  return out;
}

StepOutcome velocity_scheme_step(const SolverState& s, const Potential& P,
                                 const SolverConfig& cfg, double dt_scale, VelocityForm form) {
  const GridSpec& g = s.v.grid();
  const CflReport cfl = cfl_timestep(s.v, cfg.alpha, cfg.safety, cfg.dt_cap);
  const double dt = cfl.dt_agd * dt_scale;
  const double floor = rho_floor_value(cfg, g);

  const VectorField grad = warped_forcing(s, P);

  // Self-advection (entropy scheme, caller's 1/2 factor) and cross terms
  // (upwind): [(Dv)v]_1 = 1/2 d1(v1^2) + v2 d2 v1, analogously for v2.
  const ScalarField bx = burgers_flux_diff(s.v.x_field(), 1);
  const ScalarField by = burgers_flux_diff(s.v.y_field(), 2);
  VectorField only_y(g);
  only_y.ys() = s.v.ys();
  VectorField only_x(g);
  only_x.xs() = s.v.xs();
  const ScalarField cross_x = upwind_advect_scalar(s.v.x_field(), only_y);
  const ScalarField cross_y = upwind_advect_scalar(s.v.y_field(), only_x);

  double friction = 0.0;
  double force_coef = 1.0;
  if (form == VelocityForm::dissipative) {
    const double tau = cfg.t0 + s.t + dt;
    friction = (cfg.p + 1) / tau;
    force_coef = effective_schedule_constant(cfg, g) * cfg.p * cfg.p * std::pow(tau, cfg.p - 2);
  }

  JacobianField jac;
  ScalarField div;
  if (form == VelocityForm::epdiff) {
    jac = jacobian_central(s.v);
    div = divergence_central(s.v);
  }

  VectorField lap;
  if (cfg.eps_visc > 0.0) lap = laplacian(s.v);

  StepOutcome out;
  out.dt = dt;
  out.state.t = s.t + dt;
  out.state.v = VectorField(g);
  for (int i = 0; i < g.size(); ++i) {
    const double rc = std::max(s.rho[i], floor);
    double ax = -0.5 * bx[i] - cross_x[i] - friction * s.v.x(i) - force_coef * grad.x(i) / rc;
    double ay = -0.5 * by[i] - cross_y[i] - friction * s.v.y(i) - force_coef * grad.y(i) / rc;
    if (form == VelocityForm::epdiff) {
      // -(grad v) v - v div v, central differences.
      ax -= s.v.x(i) * jac.j11(i) + s.v.y(i) * jac.j21(i) + s.v.x(i) * div[i];
      ay -= s.v.x(i) * jac.j12(i) + s.v.y(i) * jac.j22(i) + s.v.y(i) * div[i];
    }
    if (cfg.eps_visc > 0.0) {
      ax += cfg.eps_visc * lap.x(i);
      ay += cfg.eps_visc * lap.y(i);
    }
    out.state.v.x(i) = s.v.x(i) + dt * ax;
    out.state.v.y(i) = s.v.y(i) + dt * ay;
  }

  // Symplectic sequencing: the freshly updated velocity drives the map
  // and density transports. Advancing them with the pre-step velocity
  // (plain forward Euler on the oscillatory v-phi coupling) injects
  // energy every step and the runs never settle.
  out.state.psi = transport_inverse(s.psi, out.state.v, dt);
  out.state.phi = advance_forward(s.phi, out.state.v, dt);

  if (form == VelocityForm::epdiff) {
    out.state.rho = s.rho;
  } else {
    ContinuityResult cres =
        continuity_step(s.rho, StaggeredVelocity::from_centered(out.state.v), dt);
    if (cres.negative_density) out.ok = false;
    out.state.rho = std::move(cres.rho);
  }

  if (!state_finite(out.state)) out.ok = false;
  return out;
}

}  // namespace

StepOutcome agd_step(const SolverState& s, const Potential& P, const SolverConfig& cfg,
                     double dt_scale) {
  return velocity_scheme_step(s, P, cfg, dt_scale, VelocityForm::dissipative);
}

StepOutcome nondissip_step(const SolverState& s, const Potential& P, const SolverConfig& cfg,
                           double dt_scale) {
  return velocity_scheme_step(s, P, cfg, dt_scale, VelocityForm::nondissipative);
}

StepOutcome epdiff_step(const SolverState& s, const Potential& P, const SolverConfig& cfg,
                        double dt_scale) {
  return velocity_scheme_step(s, P, cfg, dt_scale, VelocityForm::epdiff);
}

StepOutcome gd_step(const SolverState& s, const Potential& P, const SolverConfig& cfg,
                    double dt_scale) {
  const GridSpec& g = s.v.grid();
  // Steepest descent in the L2 metric of the un-warped domain:
  // phi <- phi - dt grad~U(phi). The warped-gradient form (v = -grad U
  // composed through phi) carries a 1/det(grad phi) factor that
  // amplifies the force inside compression zones and folds the map on
  // weakly regularized pairs; the un-warped flow has no such feedback.
  const VectorField grad = P.grad_unwarped(s.phi);

  StepOutcome out;
  out.state.v = VectorField(g);
  for (int i = 0; i < g.size(); ++i) {
    out.state.v.x(i) = 0.0 - grad.x(i);
    out.state.v.y(i) = 0.0 - grad.y(i);
  }
  // The diffusion bound safety/(4 alpha); the advective bound keeps the
  // inverse-map transport CFL-stable when the gradient spikes.
  double dt = cfg.alpha > 0.0 ? cfg.safety / (4.0 * cfg.alpha) : cfg.safety * cfg.dt_cap;
  const double vmax = max_speed(out.state.v);
  if (vmax > 1e-6) dt = std::min(dt, cfg.safety / vmax);
  dt *= dt_scale;
  out.dt = dt;
  out.state.t = s.t + dt;

  out.state.phi = MapField(g);
  for (int i = 0; i < g.size(); ++i) {
    out.state.phi.ux(i) = s.phi.ux(i) + dt * out.state.v.x(i);
    out.state.phi.uy(i) = s.phi.uy(i) + dt * out.state.v.y(i);
  }
  // The inverse still follows the transport PDE; its advecting field is
  // the Eulerian velocity phi_dot o psi.
  const ScalarField vx = out.state.v.x_field();
  const ScalarField vy = out.state.v.y_field();
  VectorField veul(g);
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) {
      const int i = y * g.width + x;
      const double qx = x + s.psi.ux(i);
      const double qy = y + s.psi.uy(i);
      veul.x(i) = sample_bilinear(vx, qx, qy);
      veul.y(i) = sample_bilinear(vy, qx, qy);
    }
  }
  out.state.psi = transport_inverse(s.psi, veul, dt);
  out.state.rho = s.rho;  // no density evolution
  if (!state_finite(out.state)) out.ok = false;
  return out;
}

double wave_dt(const GridSpec& g, const SolverConfig& cfg) {
  const double rho0 = 1.0 / (g.width * g.height * g.cell_area());
  const double bound = cfg.alpha > 0.0 ? std::min(1.0, std::sqrt(rho0 / (4.0 * cfg.alpha))) : 1.0;
  return cfg.safety * bound;
}

MapField wave_step(const MapField& phi_prev, const MapField& phi_curr, double t,
                   const Potential& P, const SolverConfig& cfg) {
  const GridSpec& g = phi_curr.grid();
  const double rho0 = 1.0 / (g.width * g.height * g.cell_area());
  const double dt = wave_dt(g, cfg);
  const double beta = 3.0 * dt / (2.0 * t);
  const double carry = (1.0 - beta) / (1.0 + beta);
  const double push = dt * dt / (rho0 * (1.0 + beta));
  const VectorField grad = P.grad_unwarped(phi_curr);
  MapField next(g);
  for (int i = 0; i < g.size(); ++i) {
    next.ux(i) = phi_curr.ux(i) + carry * (phi_curr.ux(i) - phi_prev.ux(i)) - push * grad.x(i);
    next.uy(i) = phi_curr.uy(i) + carry * (phi_curr.uy(i) - phi_prev.uy(i)) - push * grad.y(i);
  }
  return next;
}

double inverse_consistency(const MapField& phi, const MapField& psi) {
  if (!(phi.grid() == psi.grid()))
    throw std::invalid_argument("inverse_consistency: grid mismatch");
  const GridSpec& g = phi.grid();
  const ScalarField wx = psi.displacement().x_field();
  const ScalarField wy = psi.displacement().y_field();
  double sum = 0.0;
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) {
      const int i = y * g.width + x;
      const double px = x + phi.ux(i);
      const double py = y + phi.uy(i);
      double dx = px + sample_bilinear(wx, px, py) - x;
      double dy = py + sample_bilinear(wy, px, py) - y;
      dx -= g.width * std::round(dx / g.width);
      dy -= g.height * std::round(dy / g.height);
      sum += std::hypot(dx, dy);
    }
  }
  return sum / g.size();
}

namespace {

double map_increment(const MapField& a, const MapField& b) {
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    const double d = std::hypot(b.ux(i) - a.ux(i), b.uy(i) - a.uy(i));
    if (d > m) m = d;
  }
  return m;
}

RunResult run_wave(const HornSchunckPotential& P, const SolverConfig& cfg) {
  const GridSpec& g = P.grid();
  const double dt = wave_dt(g, cfg);
  RunResult res;
  res.state = initial_state(g);
  MapField prev = MapField::identity(g);
  MapField curr = MapField::identity(g);
  double t = 0.0;
  int consec = 0;
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    const double t_next = t + dt;
    MapField next = wave_step(prev, curr, t_next, P, cfg);
    if (!all_finite(next)) {
      res.status = RunStatus::aborted;
      break;
    }
    const double inc = map_increment(curr, next);

    // Lagrangian velocity (phi_dot on the un-warped domain); with uniform
    // rho0 the kinetic energy is 1/2 sum rho0 |phi_dot|^2 dx^2.
    VectorField vlag(g);
    for (int i = 0; i < g.size(); ++i) {
      vlag.x(i) = (next.ux(i) - curr.ux(i)) / dt;
      vlag.y(i) = (next.uy(i) - curr.uy(i)) / dt;
    }
    // Eulerian reconstruction v = phi_dot o psi drives the inverse map.
    const ScalarField vlx = vlag.x_field();
    const ScalarField vly = vlag.y_field();
    VectorField veul(g);
    for (int y = 0; y < g.height; ++y) {
      for (int x = 0; x < g.width; ++x) {
        const int i = y * g.width + x;
        const double qx = x + res.state.psi.ux(i);
        const double qy = y + res.state.psi.uy(i);
        veul.x(i) = sample_bilinear(vlx, qx, qy);
        veul.y(i) = sample_bilinear(vly, qx, qy);
      }
    }
    res.state.psi = transport_inverse(res.state.psi, veul, dt);
    res.state.v = std::move(veul);

    prev = std::move(curr);
    curr = std::move(next);
    t = t_next;

    TraceRecord rec;
    rec.iter = iter;
    rec.t = t;
    rec.potential = P.value(curr);
    rec.kinetic = kinetic_energy(res.state.rho, vlag);
    rec.total = rec.potential + rec.kinetic;
    rec.dt = dt;
    rec.map_increment = inc;
    res.trace.push_back(rec);

    if (inc < cfg.tol) {
      if (++consec >= 5) {
        res.converged = true;
        res.status = RunStatus::converged;
        break;
      }
    } else {
      consec = 0;
    }
  }
  res.state.t = t;
  res.state.phi = std::move(curr);
  return res;
}

}  // namespace

// The transported inverse map slowly drifts away from phi^-1 (first-order
// upwind phase error accumulates over the run), which corrupts the warped
// gradient and eventually destabilizes every scheme. The run loop
// re-anchors psi to the fixed-point inverse of phi at this period; the
// per-step update between anchors stays the transport PDE.
constexpr int kInverseResyncPeriod = 10;

// Accept an anchor only if composing forward lands back within this
// distance at every pixel. Where the map folds (det <= 0) the inverse
// does not exist and the fixed-point iteration diverges locally; the
// transported field, smoothed by upwind diffusion, is the bounded
// estimate there, and mixing the two pixelwise would put jumps into psi.
constexpr double kAnchorAcceptPx = 0.25;

void resync_inverse(MapField& psi, const MapField& phi) {
  const GridSpec& g = phi.grid();
  MapField inv = invert_map(phi);
  const ScalarField ux = phi.displacement().x_field();
  const ScalarField uy = phi.displacement().y_field();
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) {
      const int i = y * g.width + x;
      const double wx = inv.ux(i);
      const double wy = inv.uy(i);
      const double ex = wx + sample_bilinear(ux, x + wx, y + wy);
      const double ey = wy + sample_bilinear(uy, x + wx, y + wy);
      if (!(std::fabs(ex) <= kAnchorAcceptPx && std::fabs(ey) <= kAnchorAcceptPx)) return;
    }
  }
  psi = std::move(inv);
}

RunResult run(const ScalarField& i0, const ScalarField& i1, const SolverConfig& cfg) {
  if (!(i0.grid() == i1.grid())) throw std::invalid_argument("run: image grids differ");
  const HornSchunckPotential P(i0, i1, cfg.alpha);
  if (cfg.scheme == Scheme::wave) return run_wave(P, cfg);

  RunResult res;
  res.state = initial_state(i0.grid());
  int consec = 0;
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    if ((iter - 1) % kInverseResyncPeriod == 0) resync_inverse(res.state.psi, res.state.phi);
    StepOutcome out;
    switch (cfg.scheme) {
      case Scheme::agd: out = agd_step(res.state, P, cfg); break;
      case Scheme::agd_nodissip: out = nondissip_step(res.state, P, cfg); break;
      case Scheme::epdiff: out = epdiff_step(res.state, P, cfg); break;
      case Scheme::gd: out = gd_step(res.state, P, cfg); break;
      case Scheme::wave: break;
    }
    if (!out.ok) {
      switch (cfg.scheme) {
        case Scheme::agd: out = agd_step(res.state, P, cfg, 0.5); break;
        case Scheme::agd_nodissip: out = nondissip_step(res.state, P, cfg, 0.5); break;
        case Scheme::epdiff: out = epdiff_step(res.state, P, cfg, 0.5); break;
        case Scheme::gd: out = gd_step(res.state, P, cfg, 0.5); break;
        case Scheme::wave: break;
      }
      if (!out.ok) {
        res.status = RunStatus::aborted;
        return res;
      }
    }

    TraceRecord rec;
    rec.iter = iter;
    rec.t = out.state.t;
    rec.potential = P.value(out.state.phi);
    rec.kinetic = kinetic_energy(out.state.rho, out.state.v);
    rec.total = rec.potential + rec.kinetic;
    rec.dt = out.dt;
    rec.map_increment = map_increment(res.state.phi, out.state.phi);
    res.trace.push_back(rec);

    res.state = std::move(out.state);

    if (rec.map_increment < cfg.tol) {
      if (++consec >= 5) {
        res.converged = true;
        res.status = RunStatus::converged;
        return res;
      }
    } else {
      consec = 0;
    }
  }
  res.status = RunStatus::max_iters;
  return res;
}

}  // namespace accelflow
