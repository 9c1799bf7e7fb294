#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pfx::cli {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitDomain = 2,
  kExitPole = 3,
  kExitNotConverged = 4,  // evaluated, but not within tolerance
  kExitNumeric = 5,       // overflow, degenerate root vector, non-finite value
};

// Runs one `pfx` invocation; args excludes the program name. Reports go to
// `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pfx::cli
