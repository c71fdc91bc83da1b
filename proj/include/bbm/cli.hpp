#ifndef BBM_CLI_HPP
#define BBM_CLI_HPP

#include <string>
#include <vector>

namespace bbm::cli {

/// Runs one CLI invocation. Exit status: 0 on success, 1 when a check fails
/// or a computation cannot run (resource limits, malformed input), 2 on
/// usage errors.
int run(std::vector<std::string> args);
int run(int argc, const char* const* argv);

}  // namespace bbm::cli

#endif
