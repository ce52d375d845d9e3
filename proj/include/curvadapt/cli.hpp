#pragma once

// Command-line front end.  Exit status: 0 success or equivalent verdict,
// 2 negative verdict (distinct / contradiction), 1 usage or input error.

#include <optional>
#include <string>
#include <vector>

namespace curvadapt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNegative = 2;

/// Name of the environment variable holding the default output format.
inline constexpr const char* kFormatEnv = "CURVADAPT_FORMAT";

struct RunResult {
    int exit_code = kExitOk;
    std::string out;  ///< report
    std::string err;  ///< diagnostics
};

/// Runs one invocation; `args` excludes the program name.  `env_format` is the
/// value of CURVADAPT_FORMAT, if set.
RunResult run(const std::vector<std::string>& args, std::optional<std::string> env_format = std::nullopt);

}  // namespace curvadapt::cli
