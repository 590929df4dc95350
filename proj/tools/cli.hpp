#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace psim {

// Exit codes beyond the per-command results.
inline constexpr int kExitUsage = 64;
inline constexpr int kExitParse = 65;
inline constexpr int kExitResource = 70;

// Runs one psim command; `args` excludes the program name. Results go to
// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psim
