#pragma once

#include <string>
#include <vector>

namespace dcont::cli {

struct CommandResult {
  int exit_code = 0;
  std::string output;
};

// Runs one CLI invocation (argv without the program name). Exit codes:
// 0 all laws pass or are exhausted without failure, 1 at least one failure,
// 2 usage or parse error.
CommandResult run_command(const std::vector<std::string>& argv);

std::string usage();

}  // namespace dcont::cli
