#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "kinsim/errors.hpp"
#include "kinsim/numerics.hpp"
#include "kinsim/transport.hpp"

using namespace kinsim;

namespace {

KineticField random_field(const Grid& grid, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  KineticField Y(grid);
  for (double& v : Y.values) v = uni(rng);
  return Y;
}

}  // namespace

TEST_CASE("cfl_dt") {
  const Grid g1(1.0, 200, 8);  // dx = 0.01
  const TransportOperator op1 = make_transport(make_flux(FluxKind::burgers), g1);
  CHECK(cfl_dt(op1, 0.5, 1.0) == doctest::Approx(0.5 * g1.dx() / op1.slice_speeds.back()));

  // constant flux: all speeds vanish, fallback comes back
  const TransportOperator op0 = make_transport(make_flux(FluxKind::polynomial, {2.0}), g1);
  CHECK(cfl_dt(op0, 0.5, 0.125) == 0.125);

  // speed 2, dx = 0.1, cfl = 1 -> dt = 0.05
  const Grid g2(1.0, 20, 8);
  const TransportOperator op2 = make_transport(make_flux(FluxKind::polynomial, {0.0, 2.0}), g2);
  CHECK(cfl_dt(op2, 1.0, 1.0) == doctest::Approx(0.05));

  CHECK_THROWS_AS(cfl_dt(op1, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(cfl_dt(op1, 1.5, 1.0), DomainError);
}

TEST_CASE("advect leaves zero-speed and x-constant slices alone") {
  const Grid grid(1.0, 16, 8);
  const KineticField Y = random_field(grid, 1);

  const TransportOperator zero = make_transport(make_flux(FluxKind::polynomial, {1.0}), grid);
  CHECK(advect(Y, zero, 0.01).values == Y.values);

  KineticField C(grid);
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.nv; ++j) C.at(i, j) = grid.v_center(j);
  }
  const TransportOperator op = make_transport(make_flux(FluxKind::burgers), grid);
  const KineticField Cp = advect(C, op, cfl_dt(op, 0.9, 0.0));
  for (size_t k = 0; k < C.values.size(); ++k) {
    CHECK(Cp.values[k] == doctest::Approx(C.values[k]).epsilon(1e-14));
  }
}

TEST_CASE("unit CFL turns upwind into an exact shift") {
  const Grid grid(1.0, 16, 4);
  // f' = 1 everywhere
  const TransportOperator op = make_transport(make_flux(FluxKind::polynomial, {0.0, 1.0}), grid);
  KineticField Y(grid);
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.nv; ++j) Y.at(i, j) = (i >= 4 && i < 9) ? 1.0 : 0.0;
  }
  const KineticField S = advect(Y, op, grid.dx());
  for (int i = 0; i < grid.nx; ++i) {
    const int im = (i + grid.nx - 1) % grid.nx;
    for (int j = 0; j < grid.nv; ++j) {
      CHECK(S.at(i, j) == doctest::Approx(Y.at(im, j)).epsilon(1e-14));
    }
  }
}

TEST_CASE("advect satisfies the per-slice max principle, mass balance, L2 decay") {
  const Grid grid(2.0, 64, 16);
  const TransportOperator op = make_transport(make_flux(FluxKind::shifted_square), grid);
  const KineticField Y = random_field(grid, 2);
  const double dt = cfl_dt(op, 0.75, 0.0);
  const KineticField Z = advect(Y, op, dt);

  for (int j = 0; j < grid.nv; ++j) {
    double lo = Y.at(0, j), hi = lo, mass_in = 0.0, mass_out = 0.0, l2_in = 0.0, l2_out = 0.0;
    KahanSum min_, mout;
    for (int i = 0; i < grid.nx; ++i) {
      lo = std::min(lo, Y.at(i, j));
      hi = std::max(hi, Y.at(i, j));
      min_.add(Y.at(i, j));
      mout.add(Z.at(i, j));
      l2_in += Y.at(i, j) * Y.at(i, j);
      l2_out += Z.at(i, j) * Z.at(i, j);
    }
    mass_in = min_.value();
    mass_out = mout.value();
    for (int i = 0; i < grid.nx; ++i) {
      CHECK(Z.at(i, j) >= lo - 1e-12);
      CHECK(Z.at(i, j) <= hi + 1e-12);
    }
    CHECK(std::abs(mass_out - mass_in) <= 1e-12 * std::max(1.0, std::abs(mass_in)));
    CHECK(l2_out <= l2_in * (1.0 + 1e-12));
  }
}

TEST_CASE("advect rejects CFL violations") {
  const Grid grid(1.0, 16, 8);
  const TransportOperator op = make_transport(make_flux(FluxKind::burgers), grid);
  const KineticField Y = random_field(grid, 3);
  CHECK_THROWS_AS(advect(Y, op, 3.0 * grid.dx()), StabilityError);
}
