#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace khplumb::cli {

enum Exit { kOk = 0, kVerifyFailed = 1, kInputError = 2 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace khplumb::cli
