#pragma once

#include <utility>
#include <vector>

#include "kinsim/cone.hpp"
#include "kinsim/flux.hpp"
#include "kinsim/kinetic.hpp"
#include "kinsim/transport.hpp"

namespace kinsim {

struct DiagnosticsRow {
  double time = 0.0;
  double l2_squared = 0.0;
  double mass = 0.0;
  double interaction_total = 0.0;
  double grad_x_norm = 0.0;
  double dt_velocity_norm = 0.0;
  double defect_min = 0.0;
  double defect_top_abs = 0.0;  // internal check value, not serialized
};

struct Diagnostics {
  std::vector<DiagnosticsRow> rows;
};

struct StepResult {
  KineticField next;
  DefectMeasure defect;
};

/// One Lie-split step: upwind transport then column-wise cone projection.
StepResult step(const KineticField& Y, const FluxModel& flux, double dt);

/// Per-step data kept when EvolveOptions::record_step_data is set: the
/// collapse residual R = (projected - transported)/dt and the post-step state.
struct StepRecord {
  double time = 0.0;
  std::vector<double> residual;
  std::vector<double> post;
};

struct Trajectory {
  Grid grid;
  std::vector<std::pair<double, KineticField>> snapshots;
  Diagnostics diagnostics;
  std::vector<StepRecord> step_records;
};

struct EvolveOptions {
  double cfl = 0.5;
  std::vector<double> output_times;  // empty: snapshot every step
  double tau_flat = kAutoTau;
  bool record_step_data = false;
  double fallback_dt = 0.0;  // used when all speeds vanish; 0 means T/8
};

Trajectory evolve(const KineticField& Y0, const FluxModel& flux, double T,
                  const EvolveOptions& opts = {});

/// ||Y1(t) - Y2(t)|| per shared snapshot time.
std::vector<double> contraction_gap(const Trajectory& a, const Trajectory& b);

/// dx dv * sum (testfield - Y_post) * R per recorded step; nonnegative for
/// monotone test fields.
std::vector<double> variational_residual(const Trajectory& traj, const KineticField& testfield);

/// || (Y_next - Y)/dt + f' D_x Y || minus the square root of the interaction
/// functional total at Y; vanishes with the discretization.
double minimal_selection_gap(const KineticField& Y, const KineticField& Y_next,
                             const FluxModel& flux, double dt, double tau_flat);

}  // namespace kinsim
