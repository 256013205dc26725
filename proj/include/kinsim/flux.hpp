#pragma once

#include <functional>
#include <string>
#include <vector>

namespace kinsim {

enum class FluxKind { burgers, shifted_square, polynomial };

/// Flux f on [0,1] with derivative access. lipschitz_bound is a certified
/// upper bound for sup |f'| on [0,1] (never below any grid sample of |deriv|).
struct FluxModel {
  std::function<double(double)> eval;
  std::function<double(double)> deriv;
  double lipschitz_bound = 0.0;
  std::string name;
};

FluxModel make_flux(FluxKind kind, const std::vector<double>& coeffs = {});

FluxKind flux_kind_from_string(const std::string& s);
std::string to_string(FluxKind kind);

/// sup over uniform v samples (endpoints included) of |f'(v)|.
double max_speed(const FluxModel& flux, int samples = 4096);

/// Rankine-Hugoniot speed (f(u+) - f(u-)) / (u+ - u-).
double shock_speed(const FluxModel& flux, double u_minus, double u_plus);

}  // namespace kinsim
