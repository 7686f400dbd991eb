#pragma once

#include <iosfwd>

namespace lefthand::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int
{
    exit_ok = 0,
    exit_failure = 1,
    exit_partial = 2, ///< run finished but some points are flagged
};

/// Entry point for `run`, `validate` and `compare`.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace lefthand::cli
