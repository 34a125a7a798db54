#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dnls/errors.hpp"
#include "dnls/harness/config.hpp"
#include "dnls/harness/scenarios.hpp"

namespace h = dnls::harness;

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral lab for the derivative nonlinear Schrodinger equation", "dnls-lab"};
  app.set_version_flag("--version", std::string(h::kToolVersion));

  std::string scenario;
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::size_t> workers;
  std::optional<std::uint64_t> seed;

  std::string names;
  for (const auto& n : h::scenario_names()) names += (names.empty() ? "" : ", ") + n;
  app.add_option("scenario", scenario, "One of: " + names)->required();
  app.add_option("--config", config_path, "Config file (key = value lines or JSON)")->required();
  app.add_option("--out", out, "Output directory");
  app.add_option("--workers", workers, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for randomized sweeps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : h::kExitConfig;
  }

  h::RunOptions opts;
  opts.scenario = scenario;
  opts.workers = workers;
  opts.seed = seed;
  if (out) opts.out = *out;
  try {
    opts.config = h::load_config(config_path);
  } catch (const dnls::ConfigError& e) {
    std::cerr << "dnls-lab: configuration error: " << e.what() << "\n";
    return h::kExitConfig;
  }
  return h::run(opts, std::cerr);
}
