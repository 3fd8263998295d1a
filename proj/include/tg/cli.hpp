#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tg::cli {

// Exit codes: 0 success, 1 negative predicate, 2 usage/parse error,
// 3 internal limit.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tg::cli
