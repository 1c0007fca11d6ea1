#pragma once

#include <iosfwd>

namespace apt::cli {

/// Entry point of the `apt` tool. Exit codes: decide and oracle with -k give
/// 0 for YES and 1 for NO; verify-property gives 0 when no counterexample
/// was found and 1 otherwise; 2 means bad input or a failed run.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace apt::cli
