#pragma once

#include <filesystem>
#include <iosfwd>

#include "hypstab/cli/config.hpp"

namespace hypstab::cli {

enum ExitCode : int {
    kExitPass = 0,
    kExitCheckFailure = 1,
    kExitConfigError = 2,
    kExitNumericalFailure = 3,
};

struct RunOptions {
    std::filesystem::path out_dir = ".";
    bool quiet = false;
};

/// Executes config.command. Writes the CSV series (time-stepping commands),
/// the summary and a separate timing file into out_dir; echoes the summary to
/// `log` unless quiet. Returns an ExitCode.
int run(const ExperimentConfig& config, const RunOptions& options, std::ostream& log);

}  // namespace hypstab::cli
