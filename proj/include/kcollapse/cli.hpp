#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kcollapse {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitFails = 1, kExitUsage = 2, kExitInvariant = 3 };

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace kcollapse
