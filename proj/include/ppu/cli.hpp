#pragma once

#include "ppu/numfield.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ppu {

/// Settings shared by every subcommand.
struct CliConfig {
    ToleranceConfig tolerances;
    std::uint64_t seed = 0;
    std::size_t samples = 100;
    std::string out_path;  // empty: stdout
};

/// Exit statuses of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,  // validation, numerical, or verification failure
    kExitUsage = 2,    // usage or malformed input
};

/// Runs the command-line tool on `args` (without the program name).
/// Payloads go to `out` (or --out), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ppu
