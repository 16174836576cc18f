#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace essr::cli {

/// Runs the command line and returns the exit status: 0 ok, 2 config error,
/// 3 resource cap, 4 numeric failure. Errors are written to `err` as JSON.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace essr::cli
