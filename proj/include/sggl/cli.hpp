#pragma once

// sggle command-line runner. Exit codes: 0 all checks passed, 1 a
// mathematical check failed (witnesses dumped), 2 configuration or usage error.

#include <string>
#include <vector>

namespace sggl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfig = 2;

int run_cli(int argc, char** argv);
int run_cli(const std::vector<std::string>& args);  // args[0] is the program name

}  // namespace sggl
