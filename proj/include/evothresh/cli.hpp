#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace evothresh {

/// Runs one CLI invocation. `args` excludes the program name; the first entry
/// is the subcommand. Returns the process exit status; diagnostics go to `err`.
int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err);

int dispatch(int argc, char** argv);

}  // namespace evothresh
