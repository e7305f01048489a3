#pragma once

#include <iosfwd>

namespace toolkit {

inline constexpr const char* kToolVersion = "0.1.0";

// exit codes: 0 all checks pass, 1 some check failed, 2 bad arguments
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace toolkit
