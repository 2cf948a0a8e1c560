#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace confalg::cli {

/// Runs one command line (without the program name). Exit codes: 0 ok,
/// 1 a check failed, 2 usage or parse error.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace confalg::cli
