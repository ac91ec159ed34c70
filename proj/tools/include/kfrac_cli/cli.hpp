#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kfrac::cli {

enum ExitCode : int {
    kOk = 0,
    kOther = 1,
    kParse = 2,       // malformed file, bad flags or a spec violating a hypothesis
    kGeometry = 3,
    kConvergence = 4,
    kVerdict = 5,
};

/// Runs one command line (args excludes the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace kfrac::cli
