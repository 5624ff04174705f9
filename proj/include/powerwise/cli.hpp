#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace powerwise {

/// Exit codes: 0 success, 1 invalid input or usage, 2 computation failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitComputation = 2;

/// Runs the command line. `args[0]` is the program name. Data goes to `out`
/// and files under the output directory; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace powerwise
