#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace perc::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // not percolating, search failed, missing witness
inline constexpr int kExitUsage = 2;   // bad arguments, unreadable or malformed input

// Runs one command line (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace perc::tools
