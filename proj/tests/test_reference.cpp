#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "kinsim/errors.hpp"
#include "kinsim/experiments.hpp"
#include "kinsim/kinetic.hpp"
#include "kinsim/numerics.hpp"
#include "kinsim/reference.hpp"
#include "kinsim/solver.hpp"

using namespace kinsim;

namespace {

ScalarProfile riemann_profile(const Grid& grid, double uL, double uR) {
  ScalarProfile p(grid);
  for (int i = 0; i < grid.nx; ++i) p.u[i] = grid.x_center(i) < 0.0 ? uL : uR;
  return p;
}

}  // namespace

TEST_CASE("godunov_step keeps constants, conserves mass, obeys the max principle") {
  const Grid grid(1.0, 64, 32);
  const FluxModel flux = make_flux(FluxKind::burgers);
  ScalarProfile c(grid);
  std::fill(c.u.begin(), c.u.end(), 0.4);
  const ScalarProfile c1 = godunov_step(c, flux, 0.5 * grid.dx());
  for (double v : c1.u) CHECK(v == doctest::Approx(0.4).epsilon(1e-15));

  ScalarProfile r = riemann_profile(grid, 1.0, 0.0);
  const double mass0 = stable_sum(r.u);
  for (int k = 0; k < 20; ++k) r = godunov_step(r, flux, 0.5 * grid.dx());
  CHECK(stable_sum(r.u) == doctest::Approx(mass0).epsilon(1e-13));
  for (double v : r.u) {
    CHECK(v >= -1e-12);
    CHECK(v <= 1.0 + 1e-12);
  }
  CHECK_THROWS_AS(godunov_step(r, flux, 3.0 * grid.dx()), StabilityError);
}

TEST_CASE("godunov shock position") {
  const Grid grid(1.0, 256, 32);
  const FluxModel flux = make_flux(FluxKind::burgers);
  const ScalarProfile uT = godunov_run(riemann_profile(grid, 1.0, 0.0), flux, 0.5, 0.5);
  const auto pos = downward_crossing(uT.u, grid, 0.5);
  REQUIRE(pos.has_value());
  CHECK(std::abs(*pos - 0.25) <= 2.0 * grid.dx());
}

TEST_CASE("godunov rarefaction fan approaches the self-similar solution") {
  const Grid grid(1.0, 256, 32);
  const FluxModel flux = make_flux(FluxKind::burgers);
  const double T = 0.5;
  const ScalarProfile uT = godunov_run(riemann_profile(grid, 0.0, 1.0), flux, T, 0.5);
  KahanSum err;
  int count = 0;
  for (int i = 0; i < grid.nx; ++i) {
    const double x = grid.x_center(i);
    if (x < -0.4 || x > 0.9) continue;  // stay clear of the wrap-around shock
    const double exact = std::clamp(x / T, 0.0, 1.0);
    err.add(std::abs(uT.u[i] - exact) * grid.dx());
    ++count;
  }
  REQUIRE(count > 0);
  CHECK(err.value() <= 5.0 * std::pow(grid.dx(), 0.8));
}

TEST_CASE("exact convex Riemann solutions") {
  const FluxModel shifted = make_flux(FluxKind::shifted_square);
  // stationary shock
  CHECK(exact_riemann_convex(shifted, 1.0, 0.0, -0.3) == 1.0);
  CHECK(exact_riemann_convex(shifted, 1.0, 0.0, 0.3) == 0.0);
  // linear fan: u(xi) = (xi + 1)/2 on (-1, 1)
  for (double xi : {-0.8, -0.2, 0.0, 0.4, 0.95}) {
    CHECK(exact_riemann_convex(shifted, 0.0, 1.0, xi) ==
          doctest::Approx(0.5 * (xi + 1.0)).epsilon(1e-9));
  }
  CHECK(exact_riemann_convex(shifted, 0.0, 1.0, -2.0) == 0.0);
  CHECK(exact_riemann_convex(shifted, 0.0, 1.0, 2.0) == 1.0);
  // equal states
  CHECK(exact_riemann_convex(shifted, 0.3, 0.3, 0.7) == 0.3);
  // monotone in xi between the two states
  double prev = exact_riemann_convex(shifted, 0.2, 0.9, -1.5);
  for (double xi = -1.4; xi <= 1.5; xi += 0.1) {
    const double cur = exact_riemann_convex(shifted, 0.2, 0.9, xi);
    CHECK(cur >= prev - 1e-12);
    CHECK(cur >= 0.2 - 1e-12);
    CHECK(cur <= 0.9 + 1e-12);
    prev = cur;
  }
  // non-convex flux is rejected: f = v - v^2
  const FluxModel concave = make_flux(FluxKind::polynomial, {0.0, 1.0, -1.0});
  CHECK_THROWS_AS(exact_riemann_convex(concave, 0.0, 1.0, 0.0), DomainError);
}

TEST_CASE("composite exact solution of the square-wave problem") {
  const Grid grid(4.0, 512, 8);
  const ScalarProfile u0 = composite_exact_scl1(0.0, grid);
  for (int i = 0; i < grid.nx; ++i) {
    const double x = grid.x_center(i);
    const double expect = (x > 0.0 && x < 1.0) ? 0.0 : 1.0;
    CHECK(u0.u[i] == expect);
  }

  const ScalarProfile uh = composite_exact_scl1(0.5, grid);
  for (int i = 0; i < grid.nx; ++i) {
    const double x = grid.x_center(i);
    if (x < 0.0) {
      CHECK(uh.u[i] == 1.0);
    } else if (x < 0.5) {
      CHECK(uh.u[i] == 0.0);
    } else if (x < 1.5) {
      CHECK(uh.u[i] == doctest::Approx(x - 0.5).epsilon(1e-8));
    } else {
      CHECK(uh.u[i] == 1.0);
    }
  }

  const ScalarProfile u1 = composite_exact_scl1(1.0, grid);
  for (int i = 0; i < grid.nx; ++i) {
    const double x = grid.x_center(i);
    if (x > 0.0 && x < 2.0) {
      CHECK(u1.u[i] == doctest::Approx(0.5 * x).epsilon(1e-8));
    }
  }

  CHECK_THROWS_AS(composite_exact_scl1(1.2, grid), ValidityError);
  CHECK_THROWS_AS(composite_exact_scl1(-0.1, grid), DomainError);
  const Grid tiny(1.5, 8, 8);
  CHECK_THROWS_AS(composite_exact_scl1(1.0, tiny), DomainError);
}

TEST_CASE("kinetic solver and Godunov agree at the half level") {
  const Grid grid(2.0, 128, 128);
  const FluxModel flux = make_flux(FluxKind::burgers);
  std::vector<double> u0(grid.nx);
  for (int i = 0; i < grid.nx; ++i) {
    const double x = grid.x_center(i);
    u0[i] = (x > 0.0 && x < 1.0) ? 0.0 : 1.0;
  }
  const double T = 0.3;
  EvolveOptions opts;
  opts.output_times = {T};
  const Trajectory traj = evolve(lift_function(u0, grid), flux, T, opts);
  const auto ukin = extract_level(traj.snapshots.back().second, 0.5);

  ScalarProfile p(grid);
  p.u = u0;
  const ScalarProfile uref = godunov_run(p, flux, T, 0.5);
  KahanSum err;
  for (int i = 0; i < grid.nx; ++i) err.add(std::abs(ukin[i] - uref.u[i]) * grid.dx());
  CHECK(err.value() <= 5.0 * (grid.dx() + grid.dv()));
}
