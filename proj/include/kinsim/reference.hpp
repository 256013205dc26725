#pragma once

#include <vector>

#include "kinsim/flux.hpp"
#include "kinsim/grid.hpp"

namespace kinsim {

/// Cell-centered profile u(x_i) of the scalar law, values in [0,1].
struct ScalarProfile {
  Grid grid;
  double time = 0.0;
  std::vector<double> u;

  ScalarProfile() = default;
  explicit ScalarProfile(const Grid& g, double t = 0.0)
      : grid(g), time(t), u(static_cast<size_t>(g.nx), 0.0) {}
};

/// Conservative Godunov update, periodic. The interface flux extremizes f
/// over the v-grid samples inside [uL,uR] plus the endpoints.
ScalarProfile godunov_step(const ScalarProfile& u, const FluxModel& flux, double dt);

/// Repeated godunov_step up to T (final partial step).
ScalarProfile godunov_run(ScalarProfile u, const FluxModel& flux, double T, double cfl);

/// Self-similar Riemann solution u(xi), xi = x/t, for convex flux.
double exact_riemann_convex(const FluxModel& flux, double uL, double uR, double xi);

/// Exact entropy solution of u_t + ((u-1/2)^2)_x = 0 with the square-wave
/// data (1 on [-L,0], 0 on (0,1), 1 on [1,L]): stationary shock at 0 and a
/// fan centered at 1, valid until the fan reaches the shock at t = 1.
ScalarProfile composite_exact_scl1(double t, const Grid& grid);

}  // namespace kinsim
