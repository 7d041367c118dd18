#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rookwalk::cli {

/// Runs one invocation; args excludes the program name. Returns the exit
/// code: 0 on success (and --help), 1 on any error, which is reported as a
/// single "error: <kind>: <message>" line on err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rookwalk::cli
