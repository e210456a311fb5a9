#pragma once

#include <string>
#include <vector>

namespace chabauty::cli {

/// Runs one CLI invocation. The JSON report goes to `out` (and to the
/// --output file when given). Returns the process exit code.
int run(const std::vector<std::string>& args, std::string& out);

}  // namespace chabauty::cli
