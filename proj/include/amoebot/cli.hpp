#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace amoebot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNoLeader = 3;

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace amoebot::cli
