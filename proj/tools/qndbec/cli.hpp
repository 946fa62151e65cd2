#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qndbec::cli {

/// Entry point behind the `qndbec` executable. `args` excludes the program
/// name. Returns 0 on success, 2 on configuration or validation errors and 1
/// on numerical failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qndbec::cli
