#include <iostream>

#include "dcont/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  dcont::cli::CommandResult result = dcont::cli::run_command(args);
  std::cout << result.output;
  return result.exit_code;
}
