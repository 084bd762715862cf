#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace redplan {

// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,      // usage or validation error
  kExitNumerical = 3,  // internal numerical failure
};

// Entry point of the `redplan` tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace redplan
