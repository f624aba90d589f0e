#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qpart::cli {

// Exit codes.
inline constexpr int kPass = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpart::cli
