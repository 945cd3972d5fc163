#pragma once

#include <ostream>

namespace decaylab::cli {

/// Parses argv, dispatches the subcommand and maps failures to exit codes.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace decaylab::cli
