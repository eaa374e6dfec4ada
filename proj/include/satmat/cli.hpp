#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace satmat {

// Exit codes: 0 success or yes, 1 no, 2 usage or input error, 3 search
// budget ran out before an answer.
inline constexpr int exit_yes = 0;
inline constexpr int exit_no = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_budget = 3;

// args excludes the program name. Pattern arguments accept a path or
// corpus:NAME for an embedded corpus file.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace satmat
