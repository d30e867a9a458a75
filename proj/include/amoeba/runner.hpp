#pragma once

#include <string>

#include "amoeba/report.hpp"

namespace amoeba {

// Exit codes shared with the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitHypothesisViolated = 2;
inline constexpr int kExitIoError = 3;
inline constexpr int kExitUsage = 64;

struct ExperimentConfig {
  std::string command;  // multiarea | area | p-point | crofton | bounds | charts | validate
  int degree = 3;
  std::int64_t samples = 10000;
  double window_T = 0.0;  // 0 resolves to ln(d) + 4
  int theta_base = 32;
  int grid = 256;
  double kappa = 0.5;
  double torus_x = 1.0;
  double torus_y = 1.0;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 resolves to AMOEBA_LAB_THREADS or hardware
  std::string out_path;
  std::string format = "json";
  std::string emit_grid_path;  // optional p-hat lattice CSV
};

struct RunOutcome {
  int exit_code = kExitOk;
  Report report;
  std::string error;
};

// Validates the config, runs the experiment, writes the report when out_path
// is set. Never throws; failures map to the exit codes above.
RunOutcome run_experiment(const ExperimentConfig& cfg);

}  // namespace amoeba
