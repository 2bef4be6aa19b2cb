#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vacfric::cli {

enum ExitCode : int { ok = 0, config_error = 2, numerical_error = 3 };

/// Runs one CLI invocation. `args` excludes the program name. CSV goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace vacfric::cli
