#pragma once

#include <ostream>

namespace bcproof {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitRejected = 1,
  kExitBudget = 2,
  kExitMalformed = 3,
};

/// Runs the tool on argv (argv[0] is the program name). Results go to `out`
/// unless redirected with --out; diagnostics go to `err` as one JSON object
/// per line.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bcproof
