#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cochromatic {

/// Runs the command-line front end on `args` (program name excluded).
/// Exit codes: 0 success, 1 I/O failure, 2 precondition violation or bad usage,
/// 3 numerical non-convergence.
int run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

} // namespace cochromatic
