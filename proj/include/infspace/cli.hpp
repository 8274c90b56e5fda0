#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace infspace::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kConfigError = 2,
  kNumericalError = 3,
};

/// Environment variable naming the directory searched for relative
/// --config paths that do not exist in the working directory.
inline constexpr const char* kConfigDirEnv = "INFSPACE_CONFIG_DIR";

int run(int argc, char** argv);

/// `args` excludes the program name. Reports go to `out`, diagnostics to
/// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace infspace::cli
