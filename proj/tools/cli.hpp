#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qqs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitArgumentError = 2;

// Runs one command line (without the program name). Primary output goes to
// --out when given, else to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qqs::cli
