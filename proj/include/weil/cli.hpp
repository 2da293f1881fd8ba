#pragma once

#include <iosfwd>

namespace weil {

/// Exit codes: 0 success, 1 a gating check failed, 2 usage error,
/// 3 runtime error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace weil
