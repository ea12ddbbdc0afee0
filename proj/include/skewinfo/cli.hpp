#pragma once

#include <iosfwd>

namespace skewinfo::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,  // verify / example / invariance found a hard violation
    kExitBadInput = 2,     // unparsable or invalid configuration / input files
    kExitNumerical = 3,    // internal numerical failure (e.g. eigensolver)
};

/// Entry point of the `skewinfo` tool; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace skewinfo::cli
