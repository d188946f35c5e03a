#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace emu::cli {

enum ExitCode : int { kWin = 0, kLose = 1, kUsage = 2, kInternal = 3 };

/// Runs the `emu` command line (arguments exclude the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace emu::cli
