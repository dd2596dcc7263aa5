#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "hopfbound/app/config.hpp"

namespace hopfbound::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (program name excluded). Returns 2 on usage
/// errors, 1 on input errors, 0 otherwise; an exhausted completion budget is
/// reported in the output, not in the exit code.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             const EnvLookup& env);

}  // namespace hopfbound::app
