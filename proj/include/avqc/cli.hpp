#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace avqc {

inline constexpr const char* kToolVersion = "0.1.0";

/// Runs one CLI invocation; args[0] is the program name as in argv. Exit codes: 0 success, 2 invalid input, 1
/// numerical failure. JSON goes to `out` (or the --out file), diagnostics to
/// `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace avqc
