#include <cmath>
#include <random>

#include "doctest.h"
#include "kinsim/errors.hpp"
#include "kinsim/flux.hpp"

using namespace kinsim;

TEST_CASE("built-in fluxes evaluate analytically") {
  const FluxModel shifted = make_flux(FluxKind::shifted_square);
  CHECK(shifted.eval(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(shifted.deriv(0.0) == doctest::Approx(-1.0));
  CHECK(shifted.deriv(1.0) == doctest::Approx(1.0));

  const FluxModel burgers = make_flux(FluxKind::burgers);
  CHECK(burgers.eval(1.0) == doctest::Approx(0.5));
  CHECK(burgers.deriv(0.25) == doctest::Approx(0.25));
}

TEST_CASE("polynomial flux matches burgers for matching coefficients") {
  const FluxModel poly = make_flux(FluxKind::polynomial, {0.0, 0.0, 0.5});
  const FluxModel burgers = make_flux(FluxKind::burgers);
  for (double v : {0.0, 0.3, 0.77, 1.0}) {
    CHECK(poly.eval(v) == doctest::Approx(burgers.eval(v)).epsilon(1e-14));
    CHECK(poly.deriv(v) == doctest::Approx(burgers.deriv(v)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(make_flux(FluxKind::polynomial, {}), ConfigError);
}

TEST_CASE("deriv is consistent with eval under finite differences") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(0.05, 0.95);
  for (FluxKind kind : {FluxKind::burgers, FluxKind::shifted_square}) {
    const FluxModel f = make_flux(kind);
    for (int k = 0; k < 50; ++k) {
      const double v = uni(rng);
      const double h = 1e-6;
      const double fd = (f.eval(v + h) - f.eval(v - h)) / (2.0 * h);
      CHECK(std::abs(fd - f.deriv(v)) <= 1e-6 * (1.0 + std::abs(f.deriv(v))));
    }
  }
}

TEST_CASE("max_speed on the built-ins and a constant flux") {
  CHECK(max_speed(make_flux(FluxKind::burgers)) == doctest::Approx(1.0));
  CHECK(max_speed(make_flux(FluxKind::shifted_square)) == doctest::Approx(1.0));
  CHECK(max_speed(make_flux(FluxKind::polynomial, {3.0})) == doctest::Approx(0.0));
}

TEST_CASE("lipschitz_bound dominates sampled derivatives") {
  const FluxModel poly = make_flux(FluxKind::polynomial, {0.1, -0.4, 1.2, -0.3});
  for (int nv : {7, 64, 511}) {
    for (int j = 0; j < nv; ++j) {
      const double v = (j + 0.5) / nv;
      CHECK(std::abs(poly.deriv(v)) <= poly.lipschitz_bound);
    }
  }
}

TEST_CASE("shock speeds") {
  const FluxModel shifted = make_flux(FluxKind::shifted_square);
  CHECK(shock_speed(shifted, 0.0, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
  const FluxModel burgers = make_flux(FluxKind::burgers);
  CHECK(shock_speed(burgers, 0.0, 1.0) == doctest::Approx(0.5));
  // divided difference approaches f' as the states merge
  const double h = 1e-8;
  CHECK(std::abs(shock_speed(burgers, 0.3, 0.3 + h) - burgers.deriv(0.3)) < 1e-7);

  CHECK_THROWS_AS(shock_speed(burgers, 0.4, 0.4), DegenerateInputError);
  CHECK_THROWS_AS(shock_speed(burgers, -0.2, 0.5), DomainError);
}

TEST_CASE("shock speed symmetry and mean value bounds") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const FluxModel f = make_flux(FluxKind::shifted_square);
  double dmin = f.deriv(0.0), dmax = f.deriv(0.0);
  for (int k = 0; k <= 200; ++k) {
    const double d = f.deriv(k / 200.0);
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
  }
  for (int k = 0; k < 100; ++k) {
    double a = uni(rng), b = uni(rng);
    if (std::abs(a - b) < 1e-6) continue;
    const double s1 = shock_speed(f, a, b);
    const double s2 = shock_speed(f, b, a);
    CHECK(s1 == doctest::Approx(s2).epsilon(1e-14));
    CHECK(s1 >= dmin - 1e-12);
    CHECK(s1 <= dmax + 1e-12);
  }
}

TEST_CASE("flux kind parsing") {
  CHECK(flux_kind_from_string("burgers") == FluxKind::burgers);
  CHECK_THROWS_AS(flux_kind_from_string("quartic"), ConfigError);
}
