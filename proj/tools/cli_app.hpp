#pragma once

#include <iosfwd>

namespace tdes::cli {

// Parses argv and runs one command. Returns the process exit status:
// 0 on success, 1 on a runtime fault or failed self-test, 2 on bad usage.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tdes::cli
