#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "CLI11.hpp"
#include "kinsim/config.hpp"
#include "kinsim/errors.hpp"
#include "kinsim/experiments.hpp"
#include "kinsim/io.hpp"

namespace {

namespace fs = std::filesystem;
using namespace kinsim;

int exit_code_for(const Error& e) {
  return e.code() == ErrorCode::config ? 2 : 3;
}

void print_assertions(const Report& rep) {
  for (const Assertion& a : rep.assertions) {
    std::printf("%-4s %-35s measured=%- .6e expected=%- .6e tol=%.3e\n",
                a.pass ? "ok" : "FAIL", a.name.c_str(), a.measured, a.expected, a.tol);
  }
}

int finish_experiment(const Report& rep, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  write_report(rep, out_dir / "report.json");
  print_assertions(rep);
  std::printf("report: %s\n", (out_dir / "report.json").c_str());
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kinsim: variational kinetic solver for scalar conservation laws"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;

  auto* sim = app.add_subcommand("simulate", "run a config-driven simulation");
  sim->add_option("config", config_path, "config file")->required();
  sim->add_option("--out", out_override, "override output.dir");

  ShockRarefactionParams sr;
  std::string sr_flux = "burgers";
  std::string sr_kernel = "cosine_bump";
  std::string sr_out = "out/shock_rarefaction";
  bool sr_default_eps = true;
  auto* shock = app.add_subcommand("shock-rarefaction",
                                   "interaction functional on shock + rarefaction data");
  auto* eps_opt = shock->add_option("--epsilon", sr.epsilon, "mollifier width (default L/16)");
  shock->add_option("--grid.nx", sr.nx, "spatial cells");
  shock->add_option("--grid.nv", sr.nv, "velocity cells");
  shock->add_option("--grid.L", sr.L, "half period");
  shock->add_option("--u-minus", sr.u_minus, "lower state");
  shock->add_option("--u-plus", sr.u_plus, "upper state");
  shock->add_option("--flux.kind", sr_flux, "burgers | shifted_square");
  shock->add_option("--T", sr.T, "horizon for the speed measurement");
  shock->add_option("--cfl", sr.cfl, "CFL number");
  shock->add_option("--kernel", sr_kernel, "cosine_bump | plateau");
  shock->add_option("--out", sr_out, "output directory");

  CounterexampleParams cx;
  std::string cx_kernel = "plateau";
  std::string cx_out = "out/counterexample";
  auto* counter = app.add_subcommand("counterexample",
                                     "conservation violation after wave interaction");
  counter->add_option("--epsilon", cx.epsilon, "mollifier width");
  counter->add_option("--grid.nx", cx.nx, "spatial cells");
  counter->add_option("--grid.nv", cx.nv, "velocity cells");
  counter->add_option("--grid.L", cx.L, "half period");
  counter->add_option("--cfl", cx.cfl, "CFL number");
  counter->add_option("--kernel", cx_kernel, "cosine_bump | plateau");
  counter->add_flag("--no-solver", "skip the solver contrast run")
      ->each([&](const std::string&) { cx.evolve_solver = false; });
  counter->add_option("--out", cx_out, "output directory");

  std::string cmp_out = "out/compare";
  int cmp_levels = 3;
  int cmp_ref_factor = 4;
  auto* cmp = app.add_subcommand("compare", "kinetic solver vs Godunov reference");
  cmp->add_option("config", config_path, "config file")->required();
  cmp->add_option("--levels", cmp_levels, "refinement levels");
  cmp->add_option("--ref-factor", cmp_ref_factor, "reference resolution multiplier");
  cmp->add_option("--out", cmp_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed()) {
      RunConfig cfg = load_run_config(config_path);
      const fs::path out_dir = out_override.empty() ? fs::path(cfg.output_dir)
                                                    : fs::path(out_override);
      const int rc = run_config(cfg, out_dir);
      std::printf("%s (outputs in %s)\n", rc == 0 ? "ok" : "INVARIANT FAILURE",
                  out_dir.c_str());
      return rc;
    }
    if (shock->parsed()) {
      sr.flux_kind = flux_kind_from_string(sr_flux);
      sr.kernel = kernel_from_string(sr_kernel);
      if (sr_default_eps && eps_opt->count() == 0) sr.epsilon = sr.L / 16.0;
      return finish_experiment(experiment_shock_rarefaction(sr), sr_out);
    }
    if (counter->parsed()) {
      cx.kernel = kernel_from_string(cx_kernel);
      return finish_experiment(experiment_counterexample(cx), cx_out);
    }
    if (cmp->parsed()) {
      RunConfig cfg = load_run_config(config_path);
      CompareResult res = compare_with_reference(cfg, cmp_levels, cmp_ref_factor);
      fs::create_directories(cmp_out);
      {
        std::ofstream tab(fs::path(cmp_out) / "errors.csv");
        tab << "level,nx,nv,dx,lambda,l1_error\n";
        for (const CompareRow& r : res.rows) {
          tab << r.level << ',' << r.nx << ',' << r.nv << ',' << format_double(r.dx) << ','
              << format_double(r.lambda) << ',' << format_double(r.l1_error) << '\n';
        }
      }
      return finish_experiment(res.report, cmp_out);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
