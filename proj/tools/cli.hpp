#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sicpovm::cli {

/// Stable exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // verification or convergence failure
inline constexpr int kExitUsage = 2;   // invalid flags or unreadable files

/// Runs one subcommand (search, verify, analytic, census, basis-validate,
/// basis-export); `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "pi", "pi/3", "5pi/3", "5*pi/3", "-pi/2" or a plain number, in radians.
std::optional<double> parse_angle(const std::string& text);

}  // namespace sicpovm::cli
