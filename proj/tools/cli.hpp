#pragma once

#include <iosfwd>

namespace gidar::cli {

/// Runs one command line; returns 0 on success, 1 on a runtime error and 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gidar::cli
