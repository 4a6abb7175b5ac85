#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace foliation::cli {

inline constexpr const char* kSchema = "foliation-report/1";
inline constexpr const char* kVersion = "1.0.0";

/// Runs one command line (args exclude the program name).  Returns the exit
/// code: 0 pass, 1 fail, 2 usage or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace foliation::cli
