#pragma once

#include <ostream>

namespace vxr::cli {

enum ExitCode : int { ok = 0, internal = 1, input_error = 2, precondition = 3, io_error = 4 };

/// Entry point of the `vxr` tool. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vxr::cli
