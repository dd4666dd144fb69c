#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gammatime::cli {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;  // verify/martingale ran, some check failed
inline constexpr int kExitUsage = 2;        // unknown flag or subcommand, bad value, bad config
inline constexpr int kExitNumeric = 3;      // domain or numeric error from the library

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gammatime::cli
