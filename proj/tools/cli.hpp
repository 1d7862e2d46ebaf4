#pragma once

#include <iosfwd>

namespace hyperblocks::cli {

enum ExitCode : int { ok = 0, claim_failed = 1, usage_error = 2, capacity_exceeded = 3 };

/// Runs one subcommand; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hyperblocks::cli
