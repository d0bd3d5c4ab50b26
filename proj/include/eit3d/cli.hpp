#ifndef EIT3D_CLI_HPP
#define EIT3D_CLI_HPP

namespace eit3d {

/// Entry point of the command-line tool; factored into the library so tests
/// can drive the exact surface the binary exposes.
/// Exit codes: 0 success, 1 validation/usage error, 2 solver failure.
int run_cli(int argc, const char* const* argv);

}  // namespace eit3d

#endif
