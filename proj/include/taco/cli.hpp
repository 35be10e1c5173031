#pragma once

#include <iosfwd>

namespace taco {

/// Runs the command line. Returns 0 on success, 2 for usage errors and 1 for
/// runtime failures. Output goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace taco
