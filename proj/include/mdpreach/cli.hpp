#pragma once

#include <string>
#include <vector>

namespace mdpreach {

inline constexpr const char* kToolVersion = "0.1.0";

/// Runs one CLI invocation (args exclude the program name).
/// Exit codes: 0 success, 1 infeasible constrained problem, 2 input error,
/// 3 numerical failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace mdpreach
