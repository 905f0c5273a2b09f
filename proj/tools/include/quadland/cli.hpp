#ifndef QUADLAND_CLI_HPP_
#define QUADLAND_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace quadland::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitRuntimeError = 3;

// Entry point of the `quadland` tool. `args` excludes the program name.
// Subcommands: train, eval, render, inspect-config.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace quadland::cli

#endif  // QUADLAND_CLI_HPP_
