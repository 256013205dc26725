#pragma once

#include <vector>

#include "kinsim/flux.hpp"
#include "kinsim/grid.hpp"
#include "kinsim/kinetic.hpp"

namespace kinsim {

/// Free streaming f'(v_j) d/dx per velocity slice, periodic first-order
/// upwind in conservative form.
struct TransportOperator {
  std::vector<double> slice_speeds;  // f'(v_j)
  Grid grid;
  double cfl_limit = 1.0;
};

TransportOperator make_transport(const FluxModel& flux, const Grid& grid);

/// dt = cfl * dx / max_j |speed_j|; fallback_dt when every speed vanishes.
double cfl_dt(const TransportOperator& op, double cfl, double fallback_dt);

KineticField advect(const KineticField& Y, const TransportOperator& op, double dt);

}  // namespace kinsim
