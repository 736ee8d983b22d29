#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace regsimplex::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFinding = 1;  // uncertified candidates or inconclusive gap
inline constexpr int kExitConfig = 2;

// `args` excludes the program name. The JSON document goes to `out` unless --out is given, in
// which case the human summary goes to `out` instead; otherwise the summary goes to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace regsimplex::cli
