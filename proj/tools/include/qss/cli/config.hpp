#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qss/qss.hpp"

namespace qss::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InitialKind { gaussian, plane_wave, ground_state_file, ground_state };

const char* to_string(InitialKind kind) noexcept;

/// [initial]: the starting state of `evolve` and of the scenarios that take
/// free initial data. ground_state solves the stationary problem first with
/// the [groundstate] settings and multiplies the result by scale.
struct InitialConfig {
  InitialKind kind = InitialKind::gaussian;
  GaussianPreset gaussian;
  PlaneWavePreset plane_wave;
  std::filesystem::path path;
  double scale = 1.0;
};

struct OutputConfig {
  int snapshot_every = 0;  ///< write state_*.qss1 every this many records; 0 keeps only the final state
};

struct ScenarioConfig {
  double scale = 1.2;                   ///< blowup: multiple of the ground state
  std::optional<double> branch2_beta;   ///< blowup: also run supercritical Gaussian data at this beta
  int perturbations = 10;               ///< stability
  double epsilon = 0.01;                ///< stability: relative H1 size of each perturbation
  double growth_limit = 5.0;            ///< stability: allowed growth of the orbit distance
  double tolerance = 0.01;              ///< virial-verify: relative mismatch
  int trials = 100;                     ///< gn-check: random competitors
  double cgn_band = 0.05;               ///< gn-check: allowed |M C_GN^2 - 1|
};

struct RunConfig {
  Grid grid{2, {64, 64}, {20.0, 20.0}};
  PhysicsParams physics;
  IntegratorConfig integrator;
  PetviashviliConfig groundstate;
  InitialConfig initial;
  OutputConfig output;
  ScenarioConfig scenario;
  std::uint64_t seed = 0;
};

/// Parses and validates a configuration. Unknown tables or keys, wrong types
/// and any violated module invariant raise ConfigError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Fully resolved configuration in the same schema; parse_config(to_toml(c))
/// reproduces c.
std::string to_toml(const RunConfig& config);

/// Preset for the configured initial data (not valid for ground_state).
Preset initial_preset(const InitialConfig& initial);

}  // namespace qss::cli
