#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace deltamod::cli {

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name. Exit codes: 0 success
/// or property holds, 1 property violated, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace deltamod::cli
