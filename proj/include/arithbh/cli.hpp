#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arithbh::cli {

enum ExitCode : int { ok = 0, usage = 1, numerical = 2, io = 3 };

/// Runs the command line `args` (program name excluded).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace arithbh::cli
