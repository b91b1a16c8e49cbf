#pragma once

#include <iosfwd>

namespace ncg::cli {

enum ExitCode : int { Ok = 0, CheckFailed = 1, InputError = 2, Budget = 3, Numerical = 4 };

/// Entry point of the `ncg` tool. Reports go to `out` (or the --out file),
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ncg::cli
