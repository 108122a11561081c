#pragma once

#include "burgerslab/config.hpp"
#include "burgerslab/io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace burgerslab {

// Exit codes shared by the command-line entry points:
//   0 all checks passed (or nothing to check)
//   1 at least one check failed or was inconclusive
//   2 configuration error
//   3 runtime abort (CFL violation, boundary contact, step budget)
inline constexpr int kExitPass = 0;
inline constexpr int kExitInconclusive = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitAbort = 3;

// Environment variable consulted for the default output root.
inline constexpr const char* kOutEnvVar = "BURGERSLAB_OUT";

// Executes the configured run and writes the artifact directory
// <out_root>/<run_id>/.  Returns the directory written.
std::filesystem::path execute_run_to_dir(const ExperimentConfig& config,
                                         const std::string& out_root);

int cmd_run(const std::string& config_path, const std::string& out_root);

int cmd_verify(const std::string& run_dir, const std::vector<std::string>& only,
               std::optional<std::pair<double, double>> window_override);

// axis: mesh | lambda | truncation | flux_exponents.  `values` is the raw
// CLI string: comma-separated numbers, or '|'-separated integer lists for
// flux_exponents.  Points run concurrently up to `threads` (the solver
// itself stays single-threaded and bitwise deterministic).
int cmd_sweep(const std::string& config_path, const std::string& axis,
              const std::string& values, int threads, const std::string& out_root);

}  // namespace burgerslab
