#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "json.hpp"
#include "kinsim/cone.hpp"
#include "kinsim/flux.hpp"
#include "kinsim/kinetic.hpp"

namespace kinsim {

/// Flat key/value run description (dotted keys, '#' comments).
struct RunConfig {
  FluxKind flux_kind = FluxKind::burgers;
  std::vector<double> flux_coeffs;

  double L = 2.0;
  int nx = 64;
  int nv = 64;

  enum class InitKind { piecewise, mixture };
  InitKind init_kind = InitKind::piecewise;
  std::vector<double> breakpoints;  // strictly increasing, inside (-L, L)
  std::vector<double> values;       // piecewise: breakpoints.size() + 1 entries
  Mixture mixture;                  // mixture: same atoms at every x

  double epsilon = 0.0;  // 0 disables mollification
  Kernel kernel = Kernel::cosine_bump;

  double T = 0.5;
  double cfl = 0.5;
  std::vector<double> output_times;  // default: {T}
  double tau_flat = kAutoTau;

  std::string output_dir = "out";

  nlohmann::ordered_json to_json() const;
};

RunConfig parse_run_config(std::istream& in, const std::string& source_name);
RunConfig load_run_config(const std::filesystem::path& path);

/// Enforces the config invariants (breakpoint ordering, value ranges,
/// epsilon < L/8 and epsilon >= 2 dx when mollifying, ...).
void validate(const RunConfig& cfg);

}  // namespace kinsim
