// app.hpp: subcommand dispatch and exit-status policy for the CLI

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

namespace tmbec::runner {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitConfig = 2,
    kExitNumerical = 3,
    kExitIo = 4,
};

// Loads `config_path`, runs `command`, writes outputs into `out_dir`.
// Errors are reported on `err` and mapped to an ExitCode.
int run_command(const std::string& command, const std::filesystem::path& config_path,
                const std::filesystem::path& out_dir, std::ostream& err);

} // namespace tmbec::runner
