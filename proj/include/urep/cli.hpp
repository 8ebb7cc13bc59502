#pragma once

// Command-line front end: compile, verify, report.
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <ostream>
#include <string>
#include <vector>

namespace urep {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace urep
