#pragma once

#include <iosfwd>

namespace pbclink {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitPartial = 2,  // some pairs or chains failed; output still written
  kExitIo = 3,
  kExitParse = 4,
};

/// Entry point of the pbclink tool. Results go to `out` unless an output
/// file is given; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pbclink
