// The spreadlab command line, callable in-process.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  ///< verification violation or inconsistent input
inline constexpr int kUsage = 2;

/// args excludes the program name. "-" as a file name reads `in` or writes `out`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace cli
