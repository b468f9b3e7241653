#include <string>

#include "CLI11.hpp"
#include "qss/cli/commands.hpp"
#include "qss/cli/scenarios.hpp"

int main(int argc, char** argv) {
  using namespace qss::cli;
  CLI::App app{"Pseudospectral solver for the quadratic Schrodinger system"};
  app.require_subcommand(1);

  CommandOptions options;
  std::uint64_t seed = 0;
  std::string scenario;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", options.config, "TOML run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", options.out, "Output directory")->required();
    sub->add_option("--seed", seed, "Seed for randomized scenarios (overrides the config)");
  };
  CLI::App* gs = app.add_subcommand("groundstate", "Solve for the ground state");
  CLI::App* ev = app.add_subcommand("evolve", "Integrate the evolution system");
  CLI::App* sc = app.add_subcommand("scenario", "Run an acceptance experiment");
  common(gs);
  common(ev);
  common(sc);
  sc->add_option("name", scenario, "Scenario name")
      ->required()
      ->check(CLI::IsMember(scenario_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_config_error;
  }
  for (CLI::App* sub : {gs, ev, sc}) {
    if (sub->parsed() && sub->count("--seed") > 0) options.seed = seed;
  }

  if (gs->parsed()) return cmd_groundstate(options);
  if (ev->parsed()) return cmd_evolve(options);
  return cmd_scenario(scenario, options);
}
