#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace roadwheel {

/// Exit codes: 0 success, 1 a validation verdict failed, 2 usage error,
/// 3 numeric failure.
enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitUsage = 2, kExitNumeric = 3 };

int run_cli(int argc, char** argv);
/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace roadwheel
