#pragma once

#include <iostream>

namespace drivestyle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `drivestyle` tool. Primary artifacts go to `out` when an
/// output path is "-"; diagnostics always go to `err`.
int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr);

}  // namespace drivestyle::cli
