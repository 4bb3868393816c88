#ifndef UEXP_TOOLS_CLI_HPP
#define UEXP_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace uexp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Runs the command line `args` (without the program name). Data goes to out,
// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uexp::cli

#endif  // UEXP_TOOLS_CLI_HPP
