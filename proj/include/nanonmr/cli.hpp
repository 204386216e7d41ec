#pragma once

namespace nanonmr {

/// Full command-line entry point (subcommand dispatch, config loading,
/// error-document emission). Returns the process exit code:
/// 0 ok, 2 config error, 3 data error, 4 non-convergence, 1 internal.
int run_cli(int argc, const char* const* argv);

}  // namespace nanonmr
