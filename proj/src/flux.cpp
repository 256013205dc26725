#include "kinsim/flux.hpp"

#include <cmath>
#include <cstdlib>

#include "kinsim/errors.hpp"

namespace kinsim {

namespace {

double horner(const std::vector<double>& c, double v) {
  double r = 0.0;
  for (size_t k = c.size(); k-- > 0;) r = r * v + c[k];
  return r;
}

}  // namespace

FluxModel make_flux(FluxKind kind, const std::vector<double>& coeffs) {
  FluxModel m;
  switch (kind) {
    case FluxKind::burgers:
      m.eval = [](double v) { return 0.5 * v * v; };
      m.deriv = [](double v) { return v; };
      m.lipschitz_bound = 1.0;
      m.name = "burgers";
      return m;
    case FluxKind::shifted_square:
      m.eval = [](double v) { return (v - 0.5) * (v - 0.5); };
      m.deriv = [](double v) { return 2.0 * v - 1.0; };
      m.lipschitz_bound = 1.0;
      m.name = "shifted_square";
      return m;
    case FluxKind::polynomial: {
      if (coeffs.empty()) {
        throw ConfigError("flux: polynomial needs at least one coefficient");
      }
      for (double c : coeffs) {
        if (!std::isfinite(c)) throw ConfigError("flux: polynomial coefficient not finite");
      }
      std::vector<double> dcoeffs;
      for (size_t k = 1; k < coeffs.size(); ++k) dcoeffs.push_back(coeffs[k] * double(k));
      m.eval = [coeffs](double v) { return horner(coeffs, v); };
      m.deriv = [dcoeffs](double v) { return horner(dcoeffs, v); };
      // sampled sup of |f'| plus a second-derivative bound for the gaps
      const int n = 4096;
      double sup = 0.0;
      for (int k = 0; k <= n; ++k) {
        sup = std::max(sup, std::abs(m.deriv(double(k) / n)));
      }
      double curv = 0.0;
      for (size_t k = 2; k < coeffs.size(); ++k) {
        curv += std::abs(coeffs[k]) * double(k) * double(k - 1);
      }
      m.lipschitz_bound = sup + 0.5 * curv / n + 1e-12 * (1.0 + sup);
      m.name = "polynomial";
      return m;
    }
  }
  throw ConfigError("flux: unknown flux kind");
}

FluxKind flux_kind_from_string(const std::string& s) {
  if (s == "burgers") return FluxKind::burgers;
  if (s == "shifted_square") return FluxKind::shifted_square;
  if (s == "polynomial") return FluxKind::polynomial;
  throw ConfigError("flux: unknown flux kind '" + s + "'");
}

std::string to_string(FluxKind kind) {
  switch (kind) {
    case FluxKind::burgers: return "burgers";
    case FluxKind::shifted_square: return "shifted_square";
    case FluxKind::polynomial: return "polynomial";
  }
  return "?";
}

double max_speed(const FluxModel& flux, int samples) {
  double sup = 0.0;
  for (int k = 0; k <= samples; ++k) {
    sup = std::max(sup, std::abs(flux.deriv(double(k) / samples)));
  }
  return sup;
}

double shock_speed(const FluxModel& flux, double u_minus, double u_plus) {
  if (u_minus < -1e-12 || u_minus > 1.0 + 1e-12 || u_plus < -1e-12 || u_plus > 1.0 + 1e-12) {
    throw DomainError("shock_speed: states must lie in [0,1]");
  }
  if (std::abs(u_plus - u_minus) < 1e-14) {
    throw DegenerateInputError("shock_speed: equal states have no divided difference");
  }
  return (flux.eval(u_plus) - flux.eval(u_minus)) / (u_plus - u_minus);
}

}  // namespace kinsim
