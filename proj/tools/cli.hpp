#ifndef PARAD_TOOLS_CLI_HPP
#define PARAD_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace parad::cli {

// Exit codes.
inline constexpr int kYes = 0;
inline constexpr int kNo = 1;
inline constexpr int kUnknown = 2;
inline constexpr int kUsage = 3;

// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace parad::cli

#endif  // PARAD_TOOLS_CLI_HPP
