#include "qss/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <exception>

#include "qss/cli/config.hpp"
#include "qss/cli/output.hpp"
#include "qss/cli/scenarios.hpp"
#include "qss/qss.hpp"

namespace qss::cli {

namespace {

using nlohmann::json;

struct Prepared {
  RunConfig config;
  RunOutput out;
};

Prepared prepare(const CommandOptions& o) {
  RunConfig c = load_config(o.config);
  if (o.seed) c.seed = *o.seed;
  RunOutput out(o.out);
  out.write_text("resolved_config.toml", to_toml(c));
  return {std::move(c), std::move(out)};
}

template <class Body>
int guarded(Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "qss: config error: %s\n", e.what());
    return exit_config_error;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::invalid_argument || e.kind() == ErrorKind::shape_mismatch ||
        e.kind() == ErrorKind::unsupported) {
      std::fprintf(stderr, "qss: config error: %s\n", e.what());
      return exit_config_error;
    }
    std::fprintf(stderr, "qss: %s\n", e.what());
    return exit_unexpected;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "qss: %s\n", e.what());
    return exit_unexpected;
  }
}

}  // namespace

int cmd_groundstate(const CommandOptions& options) {
  return guarded([&]() -> int {
    auto [c, out] = prepare(options);
    json verdict = {{"command", "groundstate"}};
    try {
      const GroundStateResult gs = solve_ground_state(c);
      out.write_snapshot("state_groundstate.qss1", gs.fields, c.grid, c.physics, 0.0);
      const PohozaevReport rep = pohozaev_check(gs, c.grid);
      verdict["converged"] = true;
      verdict["iterations"] = gs.iterations;
      verdict["residual"] = gs.residual();
      verdict["positivity_min"] = gs.positivity_min;
      verdict["ratios"] = to_json(gs.ratios);
      verdict["expected"] = {{"kgrad_over_j", rep.expected_kgrad_over_j},
                             {"i_over_j", rep.expected_i_over_j},
                             {"e_over_k", rep.expected_e_over_k ? json(*rep.expected_e_over_k) : json(nullptr)},
                             {"tolerance", rep.tolerance}};
      verdict["passed"] = rep.passed();
      out.write_json("verdict.json", verdict);
      return rep.passed() ? exit_ok : exit_criterion_failed;
    } catch (const NotConverged& e) {
      verdict["converged"] = false;
      verdict["message"] = e.what();
      verdict["passed"] = false;
      out.write_json("verdict.json", verdict);
      std::fprintf(stderr, "qss: %s\n", e.what());
      return static_cast<int>(exit_criterion_failed);
    }
  });
}

int cmd_evolve(const CommandOptions& options) {
  return guarded([&]() -> int {
    auto [c, out] = prepare(options);
    const FieldPair initial = initial_fields(c);
    std::size_t count = 0;
    EvolveHooks hooks;
    hooks.on_record = [&](const ObservableRecord& r, const FieldPair& state) {
      const int every = c.output.snapshot_every;
      if (every > 0 && count % static_cast<std::size_t>(every) == 0) {
        char name[48];
        std::snprintf(name, sizeof name, "state_%06zu.qss1", count);
        out.write_snapshot(name, state, c.grid, c.physics, r.t);
      }
      ++count;
    };
    const RunResult run = evolve(initial, c.grid, c.physics, c.integrator, hooks);
    out.write_series("series.csv", run.series);
    out.write_snapshot("state_final.qss1", run.final_state, c.grid, c.physics, run.final_time);
    json verdict = {{"command", "evolve"},
                    {"status", to_string(run.status)},
                    {"final_time", run.final_time},
                    {"steps", run.steps},
                    {"records", run.series.size()}};
    verdict["max_gradient_ratio"] =
        std::isfinite(run.max_gradient_ratio) ? json(run.max_gradient_ratio) : json("inf");
    verdict["blowup_time_estimate"] = run.blowup_time_estimate ? json(*run.blowup_time_estimate) : json(nullptr);
    if (!run.series.empty()) {
      verdict["initial"] = to_json(run.series.front());
      verdict["final"] = to_json(run.series.back());
    }
    out.write_json("verdict.json", verdict);
    switch (run.status) {
      case RunStatus::completed: return static_cast<int>(exit_ok);
      case RunStatus::blowup_detected: return static_cast<int>(exit_blowup);
      case RunStatus::dt_underflow: return static_cast<int>(exit_dt_underflow);
    }
    return static_cast<int>(exit_unexpected);
  });
}

int cmd_scenario(const std::string& name, const CommandOptions& options) {
  return guarded([&]() -> int {
    auto [c, out] = prepare(options);
    ScenarioReport rep = run_scenario(name, c, out);
    json verdict = {{"command", "scenario"}, {"scenario", rep.scenario}, {"passed", rep.passed}};
    verdict["details"] = std::move(rep.details);
    out.write_json("verdict.json", verdict);
    std::fprintf(stderr, "qss: scenario %s: %s\n", rep.scenario.c_str(), rep.passed ? "pass" : "fail");
    return rep.passed ? exit_ok : exit_criterion_failed;
  });
}

}  // namespace qss::cli
