#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cml::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kVerificationFailure = 2,
    kResourceCap = 3,
};

/// Entry point shared by the cml binary and the CLI tests. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cml::cli
