#pragma once

#include <iosfwd>

namespace osn::cli {

// Runs one subcommand. Exit codes: 0 success, 1 failure (one-line
// diagnostic on `err`), 2 usage error (usage text on `err`).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace osn::cli
