#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adderlab {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitUsage = 2 };

/// Runs the `adderlab` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adderlab
