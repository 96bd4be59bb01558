#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cechb::cli {

enum ExitCode { ok = 0, parse_failure = 1, inconclusive = 2, audit_failure = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cechb::cli
