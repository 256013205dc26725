#pragma once

#include <span>
#include <utility>
#include <vector>

#include "kinsim/flux.hpp"
#include "kinsim/kinetic.hpp"

namespace kinsim {

/// Negative tau_flat selects the default tolerance 1e-10 * (column range).
inline constexpr double kAutoTau = -1.0;

/// One kinetic column Y(x_i, .).
struct VColumn {
  std::vector<double> values;
  double dv = 0.0;
};

/// Half-open index range [begin, end) of consecutive near-equal values.
struct FlatBlock {
  int begin = 0;
  int end = 0;
  int size() const { return end - begin; }
};

struct FlatBlockPartition {
  std::vector<FlatBlock> blocks;
  double tolerance = 0.0;
};

/// Exact L2 projection onto non-decreasing vectors, uniform weights
/// (pool-adjacent-violators). Output is non-decreasing as stored, no
/// tolerance involved.
void isotonic_fit(std::span<const double> y, std::span<double> out);

double resolve_tau(std::span<const double> values, double tau_flat);

VColumn project_monotone(const VColumn& y);

/// y = yK + yN with yK the cone projection and yN in the polar cone;
/// <yK, yN> = 0.
std::pair<VColumn, VColumn> moreau_split(const VColumn& y);

/// Maximal runs where consecutive gaps stay within tau. Only runs of length
/// >= 2 carry tangent-cone constraints; singletons are reported on request.
FlatBlockPartition flat_blocks(const VColumn& y, double tau_flat,
                               bool include_singletons = false);

/// Projection of g onto the tangent cone at y_state: isotonic regression of g
/// inside each flat block of y_state, identity elsewhere.
VColumn project_tangent(const VColumn& y_state, const VColumn& g, double tau_flat);

struct ColumnInteraction {
  VColumn minimizer;
  double value = 0.0;
};

/// minimizer = project_tangent(y_state, -transport); value = dv * sum
/// (minimizer + transport)^2, the pointwise interaction functional.
ColumnInteraction interaction_column(const VColumn& y_state, const VColumn& transport,
                                     double tau_flat);

struct InteractionProfile {
  std::vector<double> profile;  // per x cell
  double total = 0.0;           // dx * sum profile
};

/// Interaction functional per x column using centered differences for the
/// transport term f'(v) D_x Y.
InteractionProfile interaction_field(const KineticField& Y, const FluxModel& flux,
                                     double tau_flat);

}  // namespace kinsim
