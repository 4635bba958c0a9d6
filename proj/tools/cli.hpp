#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace freeconv {

/// Runs one invocation; args excludes the program name. Returns the exit
/// code: 0 success, 1 check failure or disagreement, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace freeconv
