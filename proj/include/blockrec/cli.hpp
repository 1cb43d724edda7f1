#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace blockrec {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;

// Runs one subcommand; `args` excludes the program name. Subcommands:
// generate, channel, decode, cluster, bounds, exact-pe, experiment.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blockrec
