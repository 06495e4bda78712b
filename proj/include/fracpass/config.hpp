#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fracpass/experiment.hpp"

namespace fracpass {

/// Keys accepted in configuration files and as `--key=value` overrides.
[[nodiscard]] const std::vector<std::string>& config_keys();

/// Sets one key. Lists are comma separated. Throws ConfigError.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Reads `key = value` lines; `#` starts a comment, blank lines are skipped.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

}  // namespace fracpass
