#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fracpass/experiment.hpp"

namespace fracpass {

enum ExitCode : int {
    kExitOk = 0,
    kExitSelftestFailed = 1,
    kExitConfigError = 2,
    kExitNumericalError = 3,
    kExitDegenerateData = 4,
};

/// Subcommands; each writes its files into config.output_dir plus run_manifest.json.
int cmd_simulate(const RunConfig& config, std::ostream& log);
int cmd_bridge_compare(const RunConfig& config, std::ostream& log);
int cmd_rate(const RunConfig& config, std::ostream& log);
int cmd_density(const RunConfig& config, std::ostream& log);
int cmd_conjecture(const RunConfig& config, std::ostream& log);
int cmd_selftest(const RunConfig& config, std::ostream& log);

/// Full command-line entry point: `fracpass <subcommand> [--config PATH] [--key=value ...]`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracpass
