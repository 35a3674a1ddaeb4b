#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mhd2d {

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitConfig = 2,
    kExitNumerical = 3,
    kExitPropertyViolation = 4,
    kExitIo = 5,
};

/// Runs one subcommand (run, resume, sweep, check-lp, check-bernstein,
/// check-ranges, report). args excludes the program name.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_run(int argc, char** argv);

}  // namespace mhd2d
