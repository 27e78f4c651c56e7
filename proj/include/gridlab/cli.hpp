#pragma once

#include <string>
#include <vector>

namespace gridlab {

// Full command-line front end. Arguments exclude the program name. Returns
// the process exit code: 0 decided output, 1 input error, 2 Unknown verdict,
// 3 enumeration budget exceeded.
int run_cli(const std::vector<std::string>& args);

}  // namespace gridlab
