#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dirac2d::cli {

// Everything behind main(). args excludes the program name.
// Exit codes: 0 ok, 1 no state found or runtime failure, 2 invalid input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dirac2d::cli
