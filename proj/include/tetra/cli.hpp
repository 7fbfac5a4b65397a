#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tetra::cli {

/// Exit codes: 0 all checks passed, 1 checks failed (report on `out`),
/// 2 input error (diagnostic on `err`).
enum ExitCode : int { kPass = 0, kFail = 1, kInputError = 2 };

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tetra::cli
