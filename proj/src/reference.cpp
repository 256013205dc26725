#include "kinsim/reference.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "kinsim/errors.hpp"

namespace kinsim {

namespace {

// Godunov interface flux: extremize f over v samples inside [uL,uR] plus the
// endpoints. Exact for the built-in quadratic fluxes when the extremum is
// grid-aligned or at an endpoint.
double godunov_flux(const FluxModel& flux, const Grid& g, double uL, double uR) {
  const double lo = std::min(uL, uR);
  const double hi = std::max(uL, uR);
  double best = flux.eval(uL);
  const double fr = flux.eval(uR);
  const bool want_min = uL <= uR;
  if (want_min ? fr < best : fr > best) best = fr;
  for (int j = 0; j < g.nv; ++j) {
    const double v = g.v_center(j);
    if (v <= lo || v >= hi) continue;
    const double fv = flux.eval(v);
    if (want_min ? fv < best : fv > best) best = fv;
  }
  return best;
}

void check_convex(const FluxModel& flux) {
  const int n = 256;
  const double h = 1.0 / n;
  for (int k = 1; k < n; ++k) {
    const double v = k * h;
    const double second = flux.eval(v - h) - 2.0 * flux.eval(v) + flux.eval(v + h);
    if (second < -1e-9) {
      throw DomainError("exact_riemann_convex: flux is not convex on [0,1]");
    }
  }
}

}  // namespace

ScalarProfile godunov_step(const ScalarProfile& u, const FluxModel& flux, double dt) {
  const Grid& g = u.grid;
  const double dx = g.dx();
  const double vmax = max_speed(flux);
  if (vmax > 0.0 && dt > dx / vmax * (1.0 + 1e-12)) {
    throw StabilityError("godunov_step: CFL violation, dt max|f'| / dx = " +
                         std::to_string(dt * vmax / dx));
  }
  ScalarProfile out(g, u.time + dt);
  std::vector<double> interface_flux(g.nx);
  for (int i = 0; i < g.nx; ++i) {
    interface_flux[i] = godunov_flux(flux, g, u.u[i], u.u[(i + 1) % g.nx]);
  }
  const double r = dt / dx;
  for (int i = 0; i < g.nx; ++i) {
    const int im = (i + g.nx - 1) % g.nx;
    out.u[i] = u.u[i] - r * (interface_flux[i] - interface_flux[im]);
  }
  return out;
}

ScalarProfile godunov_run(ScalarProfile u, const FluxModel& flux, double T, double cfl) {
  if (!(T > 0.0)) throw DomainError("godunov_run: time horizon must be positive");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw DomainError("godunov_run: cfl must lie in (0,1]");
  const double vmax = max_speed(flux);
  const double dt = vmax > 0.0 ? cfl * u.grid.dx() / vmax : T;
  double t = 0.0;
  const double eps_t = 1e-12 * std::max(1.0, T);
  while (t < T - eps_t) {
    const double d = std::min(dt, T - t);
    u = godunov_step(u, flux, d);
    t += d;
  }
  u.time = T;
  return u;
}

double exact_riemann_convex(const FluxModel& flux, double uL, double uR, double xi) {
  if (uL < -1e-12 || uL > 1.0 + 1e-12 || uR < -1e-12 || uR > 1.0 + 1e-12) {
    throw DomainError("exact_riemann_convex: states must lie in [0,1]");
  }
  check_convex(flux);
  if (std::abs(uL - uR) < 1e-15) return uL;
  if (uL > uR) {
    const double sigma = shock_speed(flux, uL, uR);
    return xi < sigma ? uL : uR;
  }
  // rarefaction: invert the non-decreasing f' on [uL, uR]
  if (xi <= flux.deriv(uL)) return uL;
  if (xi >= flux.deriv(uR)) return uR;
  double a = uL, b = uR;
  while (b - a > 1e-12) {
    const double mid = 0.5 * (a + b);
    if (flux.deriv(mid) < xi) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

ScalarProfile composite_exact_scl1(double t, const Grid& grid) {
  if (t < 0.0) throw DomainError("composite_exact_scl1: time must be nonnegative");
  if (t > 1.0) {
    throw ValidityError("composite_exact_scl1: valid only until the fan reaches the shock (t <= 1)");
  }
  if (!(grid.half_length > 1.0 + t)) {
    throw DomainError("composite_exact_scl1: domain too short for the wave pattern");
  }
  const FluxModel flux = make_flux(FluxKind::shifted_square);
  ScalarProfile out(grid, t);
  for (int i = 0; i < grid.nx; ++i) {
    const double x = grid.x_center(i);
    double val;
    if (x < 0.0) {
      val = 1.0;
    } else if (t == 0.0) {
      val = x < 1.0 ? 0.0 : 1.0;
    } else if (x < 1.0 - t) {
      val = 0.0;
    } else if (x <= 1.0 + t) {
      val = exact_riemann_convex(flux, 0.0, 1.0, (x - 1.0) / t);
    } else {
      val = 1.0;
    }
    out.u[i] = val;
  }
  return out;
}

}  // namespace kinsim
