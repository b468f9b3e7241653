#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qss/cli/config.hpp"
#include "qss/cli/output.hpp"

namespace qss::cli {

/// Outcome of one experiment: pass/fail plus every measured quantity next to
/// the value it was compared with.
struct ScenarioReport {
  std::string scenario;
  bool passed = false;
  nlohmann::json details = nlohmann::json::object();
};

const std::vector<std::string>& scenario_names();

/// Dispatches on name; throws ConfigError for an unknown scenario.
ScenarioReport run_scenario(std::string_view name, const RunConfig& config, const RunOutput& out);

/// 1.2 x ground state (config.scenario.scale) must trip the gradient blow-up
/// detector before t_end, with the variance staying under the convexity bound;
/// optionally also supercritical Gaussian data at branch2_beta.
ScenarioReport scenario_blowup(const RunConfig& config, const RunOutput& out);

/// Orbit distance of randomly perturbed ground states stays within
/// growth_limit times its initial value.
ScenarioReport scenario_stability(const RunConfig& config, const RunOutput& out);

/// Gamma-curve Hessian: determinant sign, n = 4 reduction, negative direction
/// and its finite-difference check.
ScenarioReport scenario_instability(const RunConfig& config, const RunOutput& out);

/// Second differences of the recorded V and V_perp against the closed forms.
ScenarioReport scenario_virial(const RunConfig& config, const RunOutput& out);

/// M(P0, Q0) C_GN^2 = 1 and minimality of the quotient over random pairs.
ScenarioReport scenario_gn_check(const RunConfig& config, const RunOutput& out);

/// Ground state for the configured grid, physics and solver settings.
GroundStateResult solve_ground_state(const RunConfig& config);

/// Initial data of [initial], solving for the ground state if requested.
FieldPair initial_fields(const RunConfig& config);

/// Uniform draws in [0, 1) from std::mt19937_64. The engine's output is fixed
/// by the standard; the conversion to double is done here rather than through
/// std::uniform_real_distribution, whose algorithm varies between libraries.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double in(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 engine_;
};

/// Smooth random perturbation localized where the ground state lives, scaled
/// so that its H1 norm is epsilon times h1_norm(ground_state).
FieldPair random_perturbation(const FieldPair& ground_state, const Grid& grid, double epsilon,
                              UniformStream& rng);

/// Random Gaussian-bump pair with J > 0.
FieldPair random_competitor(const Grid& grid, UniformStream& rng);

}  // namespace qss::cli
