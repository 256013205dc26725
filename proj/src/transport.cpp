#include "kinsim/transport.hpp"

#include <cmath>
#include <vector>

#include "kinsim/errors.hpp"

namespace kinsim {

TransportOperator make_transport(const FluxModel& flux, const Grid& grid) {
  TransportOperator op;
  op.grid = grid;
  op.slice_speeds.resize(grid.nv);
  for (int j = 0; j < grid.nv; ++j) op.slice_speeds[j] = flux.deriv(grid.v_center(j));
  op.cfl_limit = 1.0;
  return op;
}

double cfl_dt(const TransportOperator& op, double cfl, double fallback_dt) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw DomainError("cfl_dt: cfl must lie in (0,1]");
  double vmax = 0.0;
  for (double c : op.slice_speeds) vmax = std::max(vmax, std::abs(c));
  if (vmax == 0.0) return fallback_dt;
  return cfl * op.grid.dx() / vmax;
}

KineticField advect(const KineticField& Y, const TransportOperator& op, double dt) {
  const Grid& g = Y.grid;
  if (!(g == op.grid)) throw ShapeError("advect: operator grid mismatch");
  const double dx = g.dx();
  const double r = dt / dx;

  KineticField out(g, Y.time + dt);
  std::vector<double> slice(g.nx), flux_at(g.nx);
  for (int j = 0; j < g.nv; ++j) {
    const double c = op.slice_speeds[j];
    const double nu = c * r;
    if (std::abs(nu) > op.cfl_limit * (1.0 + 1e-12)) {
      throw StabilityError("advect: CFL violation, |c| dt / dx = " + std::to_string(std::abs(nu)));
    }
    if (c == 0.0) {
      for (int i = 0; i < g.nx; ++i) out.at(i, j) = Y.at(i, j);
      continue;
    }
    for (int i = 0; i < g.nx; ++i) slice[i] = Y.at(i, j);
    // upwind flux at the right interface of cell i; conservative form keeps
    // per-slice mass telescoping
    if (c > 0.0) {
      for (int i = 0; i < g.nx; ++i) flux_at[i] = c * slice[i];
    } else {
      for (int i = 0; i < g.nx; ++i) flux_at[i] = c * slice[(i + 1) % g.nx];
    }
    for (int i = 0; i < g.nx; ++i) {
      const int im = (i + g.nx - 1) % g.nx;
      out.at(i, j) = slice[i] - r * (flux_at[i] - flux_at[im]);
    }
  }
  return out;
}

}  // namespace kinsim
