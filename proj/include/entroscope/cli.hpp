#ifndef ENTROSCOPE_CLI_HPP
#define ENTROSCOPE_CLI_HPP

#include <string>
#include <vector>

namespace entroscope {

struct CommandResult {
    int exit_code = 0;       // 0 ok, 2 input error, 3 budget exhausted
    std::string output;      // document for stdout
    std::string diagnostics; // error text for stderr
};

/// Runs one CLI invocation in-process. args excludes the program name.
CommandResult run_command(const std::vector<std::string>& args);

} // namespace entroscope

#endif
