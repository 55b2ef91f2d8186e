#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace entroscope::cli {

// Runs one command; args excludes the program name. Returns the exit code:
// 0 success, 1 usage/parse/domain errors, 2 verification failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entroscope::cli
