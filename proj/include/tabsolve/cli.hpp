#pragma once

#include <iosfwd>

namespace tabsolve {

// Full command-line front end; returns the process exit status:
//   0  success (solve: status optimal)
//   1  solver reported infeasible/unbounded/iteration-limit, or a data error
//   2  usage error (unknown flags, bad strategy token, missing paths)
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace tabsolve
