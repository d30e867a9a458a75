#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace amoeba {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Deterministic property suite behind the `validate` command: digit tables,
// bracket containment, inequalities on randomized instances, replay
// determinism. Everything here must pass on every build.
std::vector<CheckResult> run_selfcheck(std::uint64_t seed);

}  // namespace amoeba
