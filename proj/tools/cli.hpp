#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dwell::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitVerdict = 2;

// args excludes the program name. Writes artifacts into --out (default "out").
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dwell::cli
