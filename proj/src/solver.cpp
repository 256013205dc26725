#include "kinsim/solver.hpp"

#include <algorithm>
#include <cmath>

#include "kinsim/errors.hpp"
#include "kinsim/numerics.hpp"

namespace kinsim {

namespace {

struct InternalStep {
  KineticField next;
  DefectMeasure defect;
};

InternalStep do_step(const KineticField& Y, const TransportOperator& op, double dt,
                     std::vector<double>* residual_out) {
  KineticField advected = advect(Y, op, dt);
  KineticField next(Y.grid, Y.time + dt);
  for (int i = 0; i < Y.grid.nx; ++i) {
    isotonic_fit(advected.column(i), next.column(i));
  }
  DefectMeasure defect = defect_measure(advected, next, dt);
  if (residual_out) {
    residual_out->resize(next.values.size());
    for (size_t k = 0; k < next.values.size(); ++k) {
      (*residual_out)[k] = (next.values[k] - advected.values[k]) / dt;
    }
  }
  return {std::move(next), std::move(defect)};
}

double velocity_norm(const KineticField& before, const KineticField& after, double dt) {
  KahanSum acc;
  for (size_t k = 0; k < before.values.size(); ++k) {
    const double v = (after.values[k] - before.values[k]) / dt;
    acc.add(v * v);
  }
  return std::sqrt(before.grid.dx() * before.grid.dv() * acc.value());
}

}  // namespace

StepResult step(const KineticField& Y, const FluxModel& flux, double dt) {
  const TransportOperator op = make_transport(flux, Y.grid);
  InternalStep s = do_step(Y, op, dt, nullptr);
  return {std::move(s.next), std::move(s.defect)};
}

Trajectory evolve(const KineticField& Y0, const FluxModel& flux, double T,
                  const EvolveOptions& opts) {
  if (!(T > 0.0)) throw DomainError("evolve: time horizon must be positive");
  const TransportOperator op = make_transport(flux, Y0.grid);
  const double fallback = opts.fallback_dt > 0.0 ? opts.fallback_dt : T / 8.0;
  const double dt = cfl_dt(op, opts.cfl, fallback);

  std::vector<double> times;
  {
    const double eps_t = 1e-12 * std::max(1.0, T);
    double t = 0.0;
    while (t < T - eps_t) {
      const double d = std::min(dt, T - t);
      t += d;
      times.push_back(t);
    }
    if (times.empty()) times.push_back(T);
  }

  // map each requested output time to the nearest step time (t=0 counts and
  // is always present as the first snapshot)
  std::vector<int> wanted(times.size(), 0);
  if (opts.output_times.empty()) {
    std::fill(wanted.begin(), wanted.end(), 1);
  } else {
    for (double q : opts.output_times) {
      int best = -1;  // -1 encodes t = 0
      double best_gap = std::abs(q);
      for (size_t k = 0; k < times.size(); ++k) {
        const double gap = std::abs(times[k] - q);
        if (gap < best_gap) {
          best_gap = gap;
          best = static_cast<int>(k);
        }
      }
      if (best >= 0) ++wanted[best];
    }
  }

  Trajectory traj;
  traj.grid = Y0.grid;
  traj.snapshots.emplace_back(0.0, Y0);

  DiagnosticsRow r0;
  r0.time = 0.0;
  r0.l2_squared = l2_squared(Y0);
  r0.mass = total_mass(Y0);
  r0.interaction_total = interaction_field(Y0, flux, opts.tau_flat).total;
  r0.grad_x_norm = grad_x_norm(Y0);
  traj.diagnostics.rows.push_back(r0);

  KineticField cur = Y0;
  cur.time = 0.0;
  for (size_t k = 0; k < times.size(); ++k) {
    const double t_prev = k == 0 ? 0.0 : times[k - 1];
    const double step_dt = times[k] - t_prev;
    std::vector<double> residual;
    InternalStep s = do_step(cur, op, step_dt, opts.record_step_data ? &residual : nullptr);

    DiagnosticsRow row;
    row.time = times[k];
    row.l2_squared = l2_squared(s.next);
    row.mass = total_mass(s.next);
    row.interaction_total = interaction_field(s.next, flux, opts.tau_flat).total;
    row.grad_x_norm = grad_x_norm(s.next);
    row.dt_velocity_norm = velocity_norm(cur, s.next, step_dt);
    row.defect_min = s.defect.min_value();
    row.defect_top_abs = s.defect.top_abs_max();
    traj.diagnostics.rows.push_back(row);

    if (opts.record_step_data) {
      traj.step_records.push_back({times[k], std::move(residual), s.next.values});
    }
    for (int c = 0; c < wanted[k]; ++c) traj.snapshots.emplace_back(times[k], s.next);
    cur = std::move(s.next);
  }
  return traj;
}

std::vector<double> contraction_gap(const Trajectory& a, const Trajectory& b) {
  if (!(a.grid == b.grid)) throw ShapeError("contraction_gap: grid mismatch");
  if (a.snapshots.size() != b.snapshots.size()) {
    throw ShapeError("contraction_gap: trajectories hold different snapshot counts");
  }
  std::vector<double> d(a.snapshots.size(), 0.0);
  for (size_t k = 0; k < a.snapshots.size(); ++k) {
    if (std::abs(a.snapshots[k].first - b.snapshots[k].first) > 1e-9) {
      throw ShapeError("contraction_gap: snapshot times differ");
    }
    d[k] = field_l2_distance(a.snapshots[k].second, b.snapshots[k].second);
  }
  return d;
}

std::vector<double> variational_residual(const Trajectory& traj, const KineticField& testfield) {
  if (!(testfield.grid == traj.grid)) {
    throw ShapeError("variational_residual: test field grid mismatch");
  }
  if (!columns_nondecreasing(testfield, 1e-12)) {
    throw DomainError("variational_residual: test field columns must be non-decreasing");
  }
  if (traj.step_records.empty()) {
    throw InvalidStateError(
        "variational_residual: trajectory was evolved without record_step_data");
  }
  const double w = traj.grid.dx() * traj.grid.dv();
  std::vector<double> out;
  out.reserve(traj.step_records.size());
  for (const StepRecord& rec : traj.step_records) {
    KahanSum acc;
    for (size_t k = 0; k < rec.residual.size(); ++k) {
      acc.add((testfield.values[k] - rec.post[k]) * rec.residual[k]);
    }
    out.push_back(w * acc.value());
  }
  return out;
}

double minimal_selection_gap(const KineticField& Y, const KineticField& Y_next,
                             const FluxModel& flux, double dt, double tau_flat) {
  if (!(Y.grid == Y_next.grid)) throw ShapeError("minimal_selection_gap: grid mismatch");
  const Grid& g = Y.grid;
  std::vector<double> speeds(g.nv);
  for (int j = 0; j < g.nv; ++j) speeds[j] = flux.deriv(g.v_center(j));
  const double inv2dx = 1.0 / (2.0 * g.dx());

  KahanSum acc;
  for (int i = 0; i < g.nx; ++i) {
    const int ip = (i + 1) % g.nx;
    const int im = (i + g.nx - 1) % g.nx;
    for (int j = 0; j < g.nv; ++j) {
      const double vel = (Y_next.at(i, j) - Y.at(i, j)) / dt;
      const double trans = speeds[j] * (Y.at(ip, j) - Y.at(im, j)) * inv2dx;
      const double d = vel + trans;
      acc.add(d * d);
    }
  }
  const double term1 = std::sqrt(g.dx() * g.dv() * acc.value());
  const double total = interaction_field(Y, flux, tau_flat).total;
  const double term2 = std::sqrt(std::max(0.0, total));
  return term1 - term2;
}

}  // namespace kinsim
