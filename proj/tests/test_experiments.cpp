#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "kinsim/config.hpp"
#include "kinsim/errors.hpp"
#include "kinsim/experiments.hpp"

using namespace kinsim;
namespace fs = std::filesystem;

namespace {

void check_all(const Report& rep) {
  for (const Assertion& a : rep.assertions) {
    INFO(a.name, ": measured=", a.measured, " expected=", a.expected, " tol=", a.tol);
    CHECK(a.pass);
  }
}

}  // namespace

TEST_CASE("shock-rarefaction experiment passes at desk scale (burgers)") {
  ShockRarefactionParams p;
  p.L = 2.0;
  p.epsilon = p.L / 16.0;
  p.nx = 96;
  p.nv = 96;
  p.u_minus = 0.0;
  p.u_plus = 1.0;
  p.flux_kind = FluxKind::burgers;
  p.T = 0.2;
  const Report rep = experiment_shock_rarefaction(p);
  check_all(rep);
  CHECK(rep.measurements["sigma_rankine_hugoniot"].get<double>() == doctest::Approx(0.5));

  const fs::path dir = fs::temp_directory_path() / "kinsim_sr_report";
  fs::create_directories(dir);
  write_report(rep, dir / "report.json");
  CHECK(fs::exists(dir / "report.json"));
}

TEST_CASE("shock-rarefaction experiment passes at desk scale (shifted square)") {
  ShockRarefactionParams p;
  p.L = 2.0;
  p.epsilon = p.L / 16.0;
  p.nx = 96;
  p.nv = 96;
  p.flux_kind = FluxKind::shifted_square;
  p.T = 0.2;
  const Report rep = experiment_shock_rarefaction(p);
  check_all(rep);
  CHECK(rep.measurements["sigma_rankine_hugoniot"].get<double>() ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("shock-rarefaction rejects bad states") {
  ShockRarefactionParams p;
  p.u_minus = 0.8;
  p.u_plus = 0.2;
  CHECK_THROWS_AS(experiment_shock_rarefaction(p), DomainError);
}

TEST_CASE("counterexample delta is positive and shrinks with epsilon") {
  // same grid, epsilon halvings: both fields approach indicators and the
  // L2 defect of the mollification vanishes
  const double d1 = counterexample_delta(256, 256, 4.0, 0.4, Kernel::plateau);
  const double d2 = counterexample_delta(256, 256, 4.0, 0.2, Kernel::plateau);
  const double d3 = counterexample_delta(256, 256, 4.0, 0.1, Kernel::plateau);
  CHECK(d1 > d2);
  CHECK(d2 > d3);
  CHECK(d3 > 0.0);
}

TEST_CASE("counterexample experiment report") {
  CounterexampleParams p;
  p.nx = 192;
  p.nv = 128;
  p.L = 4.0;
  p.epsilon = 0.25;
  const Report rep = experiment_counterexample(p);
  check_all(rep);
  CHECK(rep.measurements["delta_l2_squared"].get<double>() > 0.0);
  CHECK(rep.measurements["solver_l2_drift"].get<double>() >= 0.0);
}

TEST_CASE("counterexample needs room for the waves") {
  CounterexampleParams p;
  p.L = 1.5;
  CHECK_THROWS_AS(experiment_counterexample(p), DomainError);
}

TEST_CASE("compare against the Godunov reference") {
  std::istringstream in(
      "flux.kind = burgers\ngrid.L = 2\ngrid.nx = 48\ngrid.nv = 48\n"
      "init.kind = piecewise\ninit.breakpoints = 0, 1\ninit.values = 1, 0, 1\n"
      "time.T = 0.3\n");
  const RunConfig cfg = parse_run_config(in, "<memory>");
  const CompareResult res = compare_with_reference(cfg, 2, 4);
  REQUIRE(res.rows.size() == 6);  // 2 levels x 3 lambdas
  for (size_t li = 0; li < res.lambdas.size(); ++li) {
    const double coarse = res.rows[li].l1_error;
    const double fine = res.rows[res.lambdas.size() + li].l1_error;
    CHECK(fine < coarse);
  }
}

TEST_CASE("compare on constant data reports vanishing errors") {
  std::istringstream in(
      "flux.kind = burgers\ngrid.L = 1\ngrid.nx = 16\ngrid.nv = 16\n"
      "init.kind = piecewise\ninit.values = 1\ntime.T = 0.1\n");
  const RunConfig cfg = parse_run_config(in, "<memory>");
  const CompareResult res = compare_with_reference(cfg, 2, 4);
  for (const CompareRow& r : res.rows) CHECK(r.l1_error <= 1e-12);
  check_all(res.report);
}

TEST_CASE("lambda independence for indicator data") {
  std::istringstream in(
      "flux.kind = burgers\ngrid.L = 2\ngrid.nx = 64\ngrid.nv = 64\n"
      "init.kind = piecewise\ninit.breakpoints = 0, 1\ninit.values = 1, 0, 1\n"
      "time.T = 0.2\n");
  const RunConfig cfg = parse_run_config(in, "<memory>");
  const KineticField Y0 = build_initial_field(cfg);
  const auto a = extract_level(Y0, 0.25);
  const auto b = extract_level(Y0, 0.5);
  const auto c = extract_level(Y0, 0.75);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a[i] - b[i]) <= Y0.grid.dv());
    CHECK(std::abs(b[i] - c[i]) <= Y0.grid.dv());
  }
}

TEST_CASE("run_config flags invariant failures with exit 1 semantics") {
  // a healthy shock config exits 0
  std::istringstream in(
      "flux.kind = burgers\ngrid.L = 2\ngrid.nx = 64\ngrid.nv = 32\n"
      "init.kind = piecewise\ninit.breakpoints = 0, 1\ninit.values = 1, 0, 1\n"
      "mollify.epsilon = 0.125\ntime.T = 0.1\n");
  const RunConfig cfg = parse_run_config(in, "<memory>");
  const fs::path dir = fs::temp_directory_path() / "kinsim_run_shock";
  fs::remove_all(dir);
  CHECK(run_config(cfg, dir) == 0);
}
