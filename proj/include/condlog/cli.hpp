#pragma once

#include <ostream>

namespace condlog {

/// Exit codes: 0 check passed or true, 1 check failed or false, 2 usage or
/// input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace condlog
