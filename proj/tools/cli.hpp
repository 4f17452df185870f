#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace crnv::cli {

/// Run the command line given argv-style arguments (program name excluded).
/// Returns the process exit code: 0 pass, 1 fail, 2 inconclusive,
/// 3 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crnv::cli
