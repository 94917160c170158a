#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qdsim {

/// Exit codes: 0 all checks pass, 1 a physics check failed, 2 usage or config error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPhysics = 1;
inline constexpr int kExitUsage = 2;

/// Entire command line, argv[0] included. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace qdsim
