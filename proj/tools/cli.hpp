#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace topomap::cli {

// Stable exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kInput = 3;
inline constexpr int kSolver = 4;
inline constexpr int kInvalid = 5;

/// Runs one `topomap` command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace topomap::cli
