#include <CLI11.hpp>
#include <cstdio>
#include <vector>

#include "amoeba/report.hpp"
#include "amoeba/runner.hpp"
#include "amoeba/version.hpp"

namespace {

void add_common_options(CLI::App* sub, amoeba::ExperimentConfig& cfg,
                        std::vector<double>& torus) {
  sub->add_option("--degree", cfg.degree, "curve degree d");
  sub->add_option("--samples", cfg.samples, "Monte Carlo sample count");
  sub->add_option("--window", cfg.window_T, "half-width T of the sampling window (default ln d + 4)");
  sub->add_option("--theta-base", cfg.theta_base, "base angular slices (power of two >= 16)");
  sub->add_option("--grid", cfg.grid, "grid resolution for dense checks / lattices");
  sub->add_option("--kappa", cfg.kappa, "chart capacity in (0, 1]");
  sub->add_option("--torus", torus, "torus radii x y")->expected(2);
  sub->add_option("--seed", cfg.seed, "64-bit RNG seed");
  sub->add_option("--threads", cfg.threads, "worker count (default AMOEBA_LAB_THREADS or hardware)");
  sub->add_option("--out", cfg.out_path, "report file path");
  sub->add_option("--format", cfg.format, "report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"amoeba-lab: random plane-curve amoeba experiments"};
  app.set_version_flag("--version", amoeba::kVersion);
  app.require_subcommand(1);

  amoeba::ExperimentConfig cfg;
  std::vector<double> torus{1.0, 1.0};

  const char* commands[] = {"multiarea", "area", "p-point", "crofton", "bounds", "charts", "validate"};
  const char* descriptions[] = {
      "expected multiarea of the amoeba (target pi^2 d)",
      "expected area of the amoeba against the degree-wise bound",
      "membership probability p(t) at the torus (ln x, ln y)",
      "mean torus intersection count against (d/2pi) x torus area",
      "deterministic radius tables, density integral and closed-form bounds",
      "submanifold-chart probability over marked Fubini-Study charts",
      "deterministic property suite; nonzero exit on any violation"};
  for (int i = 0; i < 7; ++i) {
    CLI::App* sub = app.add_subcommand(commands[i], descriptions[i]);
    add_common_options(sub, cfg, torus);
    if (std::string(commands[i]) == "p-point")
      sub->add_option("--emit-grid", cfg.emit_grid_path, "write a p-hat lattice CSV to this path");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return amoeba::kExitUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.torus_x = torus[0];
  cfg.torus_y = torus[1];

  const amoeba::RunOutcome outcome = amoeba::run_experiment(cfg);
  if (outcome.exit_code != amoeba::kExitOk && outcome.exit_code != amoeba::kExitHypothesisViolated) {
    std::fprintf(stderr, "amoeba-lab: %s\n", outcome.error.c_str());
    return outcome.exit_code;
  }
  if (!outcome.error.empty()) std::fprintf(stderr, "amoeba-lab: %s\n", outcome.error.c_str());
  if (cfg.out_path.empty()) std::fputs(amoeba::report_to_json(outcome.report).c_str(), stdout);
  return outcome.exit_code;
}
