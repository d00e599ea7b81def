#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperlap::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,         ///< I/O problems, failed property checks
  kUsage = 2,           ///< bad flags, invalid documents, generator domain errors
  kNotConverged = 3,    ///< diffuse hit max_steps
  kSingular = 4,        ///< numerical singularity during diffusion
};

/// Runs the command line `hyperlap <args...>` (args exclude the program
/// name), writing human-readable output to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperlap::cli
