#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relaybound::cli {

/// Process exit codes; a stable contract for scripts.
enum ExitCode : int {
  kExitOk = 0,            ///< success or PASS
  kExitFail = 1,          ///< a check ran and its claim did not hold
  kExitUsage = 2,         ///< bad flags or values that do not parse
  kExitDomain = 3,        ///< a precondition of the library call failed
  kExitInconclusive = 4,  ///< Monte Carlo verdict within the guard band
};

/// Runs one subcommand. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relaybound::cli
