#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace matchlab {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 1;
inline constexpr int kExitInvariant = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitChecksFailed = 4;

// Runs one command; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace matchlab
