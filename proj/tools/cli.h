#ifndef EPILOG_TOOLS_CLI_H
#define EPILOG_TOOLS_CLI_H

#include <iosfwd>

namespace epilog::cli
{

/// Process exit codes. Nothing else is ever returned.
enum ExitCode : int {
    Success        = 0,
    IoFailure      = 1,
    Validation     = 2,
    NotConverged   = 3,
};

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace epilog::cli

#endif // EPILOG_TOOLS_CLI_H
