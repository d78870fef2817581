#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace brnr::cli {

// The full command-line front end, callable in-process for tests.
// Exit codes: 0 ok, 1 internal error, 2 input error, 3 oracle disagreement,
// 4 resource cap exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace brnr::cli
