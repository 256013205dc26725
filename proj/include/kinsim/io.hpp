#pragma once

#include <filesystem>
#include <string>

#include "kinsim/kinetic.hpp"
#include "kinsim/reference.hpp"
#include "kinsim/solver.hpp"

namespace kinsim {

/// 17 significant digits; round-trips doubles exactly through text.
std::string format_double(double x);

/// Header "x,v,Y", one row per cell, row-major in x then v.
void write_field_csv(const KineticField& field, const std::filesystem::path& path);

/// Reconstructs the field (grid inferred from the coordinate columns,
/// values bit-identical). The time stamp is not part of the schema.
KineticField read_field_csv(const std::filesystem::path& path);

/// Header "t,l2_squared,mass,interaction_total,grad_x_norm,dt_velocity_norm,defect_min".
void write_diagnostics_csv(const Diagnostics& diag, const std::filesystem::path& path);

/// Header "x,u".
void write_profile_csv(const ScalarProfile& profile, const std::filesystem::path& path);

}  // namespace kinsim
