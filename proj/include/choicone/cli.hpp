#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace choicone {

// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,        // success, InCone, Factored, NoCounterexample
  kExitFailed = 1,    // verify found a violated check
  kExitRefuted = 2,   // Refuted, NotPreserving, Counterexample
  kExitUnknown = 3,
  kExitUsage = 64,
  kExitFormat = 65,
};

// args[0] is the program name. JSON goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace choicone
