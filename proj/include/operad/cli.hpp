#pragma once

#include <iosfwd>

namespace operad {

/// Entry point of the operad command-line tool. Returns the process exit
/// code: 0 success, 2 parse error, 3 hypothesis failure, 4 budget
/// exhausted, 5 internal error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace operad
