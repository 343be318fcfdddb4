#include <cstdio>
#include <string>
#include <vector>

#include "entroscope/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    entroscope::CommandResult result = entroscope::run_command(args);
    if (!result.output.empty()) std::fputs(result.output.c_str(), stdout);
    if (!result.diagnostics.empty()) std::fputs(result.diagnostics.c_str(), stderr);
    return result.exit_code;
}
