#pragma once

#include <iosfwd>

namespace ershov {

/// Exit codes: 0 pass, 1 negative result or failed audit, 2 input error,
/// 3 scenario precondition failure.
int run_cli(int argc, char const* const* argv, std::ostream& out, std::ostream& err);

} // namespace ershov
