#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hilproj::cli {

// Exit codes. verify additionally returns the number of failed properties.
inline constexpr int kOk = 0;
inline constexpr int kBadInput = 2;
inline constexpr int kDimension = 3;
inline constexpr int kNotCovered = 4;
inline constexpr int kNotOnSphere = 5;
inline constexpr int kMaxFailureExit = 125;

/// args excludes the program name. JSON goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hilproj::cli
