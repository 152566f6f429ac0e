#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vlab::cli {

/// Runs the tool with argv[1..]. Reports go to `out` (or the --output file),
/// diagnostics and the verify table to `err`. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vlab::cli
