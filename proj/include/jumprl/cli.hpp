#pragma once

#include <iosfwd>

namespace jumprl {

/// Exit codes: 0 success, 1 usage or input error, 3 no result or counterexample.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace jumprl
