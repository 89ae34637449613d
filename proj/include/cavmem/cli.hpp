#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cavmem {

// Exit codes: 0 success, 1 configuration error, 2 numerical failure, 3 I/O.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cavmem
