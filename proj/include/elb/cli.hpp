#pragma once

#include <iosfwd>

namespace elb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitMalformed = 2;
inline constexpr int kExitDegenerate = 3;
inline constexpr int kExitInadmissible = 4;

/// Entry point of the `elb` tool. Standard output and error go to `out` and `err`, so the
/// tool can run in-process under test.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace elb::cli
