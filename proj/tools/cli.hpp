#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace picard_strata {

// Command dispatch for the picard-strata tool.  args excludes the program
// name.  Returns the process exit status: 0 on success, 2 on validation
// errors (bad flags, malformed input, violated preconditions), 1 on internal
// invariant violations such as a falsified representability claim.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace picard_strata
