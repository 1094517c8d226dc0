#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace turnarcs::cli {

// Exit statuses of the command-line tool.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;       // bad flags or rejected model parameters
inline constexpr int kValidation = 2;  // failed covariance check or numerical model failure
inline constexpr int kIo = 3;

/// Runs the tool on argv[1 ...]; argv[0] is the program name.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace turnarcs::cli
