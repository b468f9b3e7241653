#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace qss::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_unexpected = 1,
  exit_blowup = 2,
  exit_dt_underflow = 3,
  exit_criterion_failed = 4,
  exit_config_error = 64,
};

struct CommandOptions {
  std::filesystem::path config;
  std::filesystem::path out;
  std::optional<std::uint64_t> seed;
};

/// Each command loads the config, writes resolved_config.toml and its
/// artifacts into options.out and returns an ExitCode. Config problems are
/// reported on stderr and mapped to exit_config_error.
int cmd_groundstate(const CommandOptions& options);
int cmd_evolve(const CommandOptions& options);
int cmd_scenario(const std::string& name, const CommandOptions& options);

}  // namespace qss::cli
