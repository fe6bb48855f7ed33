#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace omega::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kSuccess = 0, kVerdictFail = 1, kUsage = 2, kGuard = 3 };

// Parses args (without the program name), writes a JSON report to out and
// human-readable text to err under --pretty; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace omega::cli
