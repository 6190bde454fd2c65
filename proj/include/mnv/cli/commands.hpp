#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mnv {

/// Exit codes shared by every command.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2 };

/// Runs one mnvcert invocation. `args` excludes the program name. Reports go
/// to `out` (or the --out file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mnv
