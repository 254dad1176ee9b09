#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace equical {

// Exit codes: 0 success, 2 usage/validation, 3 I/O, 4 numerical
// non-convergence.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace equical
