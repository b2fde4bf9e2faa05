#pragma once

#include <iosfwd>

namespace effdemand {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;   // parse, validation and usage errors
inline constexpr int kExitSolver = 3;  // non-convergence and other solver failures

/// Runs the command line. Data goes to `out` (or the --out file),
/// diagnostics to `err` as one "E_CODE: message" line.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace effdemand
