#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kr::cli {

// Runs the command line given by args (program name excluded).  Exit codes:
// 0 success, 1 verification violation, 2 usage error, 3 budget/overflow or
// other computational failure.
int run(std::vector<std::string> args, std::ostream &out, std::ostream &err);

}  // namespace kr::cli
