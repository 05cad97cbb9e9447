#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cinetrack::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kIo = 3,
    kEmptyRegion = 4,
};

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cinetrack::cli
