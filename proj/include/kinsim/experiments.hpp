#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "kinsim/config.hpp"
#include "kinsim/kinetic.hpp"
#include "kinsim/solver.hpp"

namespace kinsim {

struct Assertion {
  std::string name;
  double expected = 0.0;
  double measured = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct Report {
  nlohmann::ordered_json config;
  nlohmann::ordered_json measurements;
  std::vector<Assertion> assertions;

  bool all_pass() const;
  nlohmann::ordered_json to_json() const;
};

/// Initial kinetic state described by a config (lift + optional mollify).
KineticField build_initial_field(const RunConfig& cfg);

/// Full config-driven run: snapshots, diagnostics.csv and summary.json under
/// out_dir. Returns 0 on success, 1 when a run invariant fails.
int run_config(const RunConfig& cfg, const std::filesystem::path& out_dir);

/// Interpolated position of the downward crossing of `level` in a profile;
/// empty when the profile never crosses downward.
std::optional<double> downward_crossing(const std::vector<double>& u, const Grid& grid,
                                        double level);

struct ShockRarefactionParams {
  double epsilon = 0.25;  // default L/16
  int nx = 256;
  int nv = 256;
  double L = 4.0;
  double u_minus = 0.0;
  double u_plus = 1.0;
  FluxKind flux_kind = FluxKind::burgers;
  double T = 0.5;
  double cfl = 0.5;
  Kernel kernel = Kernel::cosine_bump;
};

/// Periodic shock + rarefaction data; checks interaction locality, the
/// tangent-cone minimizer on the shock block, the measured shock speed, and
/// the strength scaling of the normalized interaction value.
Report experiment_shock_rarefaction(const ShockRarefactionParams& p);

struct CounterexampleParams {
  double epsilon = 0.1;
  int nx = 512;
  int nv = 512;
  double L = 4.0;
  double cfl = 0.5;
  Kernel kernel = Kernel::plateau;
  bool evolve_solver = true;
};

/// L2 growth of the mollified lift between t=0 and t=1 for the square-wave
/// problem, with a grid-refinement noise floor and a solver run for contrast.
Report experiment_counterexample(const CounterexampleParams& p);

/// dx dv sum of (mollify(lift(u(1))))^2 - (mollify(lift(u(0))))^2.
double counterexample_delta(int nx, int nv, double L, double epsilon, Kernel kernel);

struct CompareRow {
  int level = 0;
  int nx = 0;
  int nv = 0;
  double dx = 0.0;
  double lambda = 0.0;
  double l1_error = 0.0;
};

struct CompareResult {
  std::vector<CompareRow> rows;
  std::vector<double> lambdas;
  std::vector<double> fitted_rates;  // per lambda, slope of log error vs log dx
  Report report;
};

/// Kinetic solver vs Godunov at ref_factor x resolution from the same data,
/// refined `levels` times with nx, nv doubled.
CompareResult compare_with_reference(const RunConfig& cfg, int levels = 3, int ref_factor = 4,
                                     const std::vector<double>& lambdas = {0.25, 0.5, 0.75});

void write_report(const Report& report, const std::filesystem::path& path);

}  // namespace kinsim
