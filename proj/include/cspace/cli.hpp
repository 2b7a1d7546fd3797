#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cspace::cli {

enum ExitCode : int {
    kOk = 0,
    kPartial = 1,
    kUsage = 2,
    kNetwork = 3,
    kInfeasible = 4,
};

inline constexpr const char* kConfigEnv = "CONCEPT_SPACE_CONFIG";
inline constexpr const char* kFetchUrlEnv = "CONCEPT_SPACE_FETCH_URL";

/// Runs one command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cspace::cli
