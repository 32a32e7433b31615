#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rsearch::cli {

/// Process exit codes.
enum ExitCode : int
{
    kOk = 0,
    kUsage = 1,
    kUnsupported = 2,
    kNonConvergence = 3,
    kIoError = 4,
    kExcessiveCensoring = 5,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(std::vector<std::string> const& args, std::ostream& out,
        std::ostream& err);

}  // namespace rsearch::cli
