#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace trilinea::cli {

// Runs the full command-line surface against the given argument list
// (program name excluded).  Summaries go to `out`, diagnostics to `err`.
// Returns the process exit code:
//   0  success
//   1  mathematically infeasible / no solution (informational)
//   2  bad input or invalid usage
//   3  internal inconsistency detected between independent checks
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, const char* const* argv);

} // namespace trilinea::cli
