#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace femtonet::cli {

enum ExitCode { kOk = 0, kDomainError = 1, kUsageError = 2 };

/// Runs one command line (without the program name). Regular output goes to
/// `out`, diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace femtonet::cli
