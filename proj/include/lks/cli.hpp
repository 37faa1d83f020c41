#pragma once

// Command dispatch for the `lks` tool.  Commands: analyze, quotients,
// classify, compare, components, geodesic, conjugate.

#include <string>
#include <vector>

namespace lks {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

// Runs one invocation (args exclude the program name).  Exit codes:
// 0 success, 1 domain/validation error, 2 parse error.
CliResult run_cli(const std::vector<std::string>& args);

int lks_main(int argc, char** argv);

}  // namespace lks
