#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace revzeta::cli {

// Exit statuses are stable contracts.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kValidationFailure = 2;
inline constexpr int kBudgetExceeded = 3;
inline constexpr int kConsistencyFailure = 4;

/// Runs one CLI invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace revzeta::cli
