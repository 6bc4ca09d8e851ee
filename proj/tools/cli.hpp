#pragma once

#include <ostream>

namespace spb::cli {

/// Exit status: 0 success, 1 unreadable or malformed input, 2 precondition
/// violation (including bad flags), 3 non-convergence or failed certification.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spb::cli
