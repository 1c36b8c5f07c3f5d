#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fastice/config.hpp"
#include "fastice/errors.hpp"
#include "fastice/scenarios.hpp"
#include "fastice/simulation.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;

void print_summary(const fastice::RunResult& result) {
  std::cout << "steps: " << result.steps << '\n';
  if (!result.diagnostics.empty()) {
    const auto& last = result.diagnostics.back();
    std::cout << "t_s: " << last.t << '\n'
              << "phi_cum: " << last.phi_cum << '\n'
              << "bound_rhs: " << last.bound_rhs << '\n';
  }
  int grounded = 0;
  int exited = 0;
  for (const auto& b : result.bergs) {
    grounded += b.grounded && !b.exited;
    exited += b.exited;
  }
  std::cout << "bergs grounded: " << grounded << ", exited: " << exited << '\n'
            << "output: " << result.directory.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled iceberg and viscous-plastic sea-ice simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run a configuration file");
  run->add_option("--config", config_path, "Configuration file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();

  std::string scenario_name;
  double resolution = 0.0;
  double radius = 0.0;
  double duration = -1.0;
  auto* scenario = app.add_subcommand("scenario", "Run a built-in scenario");
  scenario->add_option("name", scenario_name, "stability, refinement, radius or dynamic")
      ->required();
  scenario->add_option("--resolution", resolution, "Mesh resolution in m");
  scenario->add_option("--radius", radius, "Iceberg radius in m");
  scenario->add_option("--duration", duration, "Simulated time in s");
  scenario->add_option("--out", out_dir, "Output directory")->required();

  auto* validate = app.add_subcommand("validate", "Check a configuration file without running");
  validate->add_option("--config", config_path, "Configuration file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      print_summary(fastice::run_scenario(fastice::load_config(config_path), out_dir));
    } else if (*scenario) {
      fastice::ScenarioConfig cfg = fastice::builtin_scenario(scenario_name);
      if (resolution > 0.0) fastice::set_resolution(cfg, resolution);
      if (radius > 0.0) fastice::set_berg_radius(cfg, radius);
      if (duration >= 0.0) fastice::set_duration(cfg, duration);
      print_summary(fastice::run_scenario(cfg, out_dir));
    } else if (*validate) {
      fastice::validate_config(fastice::load_config(config_path));
      std::cout << "config OK\n";
    }
  } catch (const fastice::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const fastice::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return 0;
}
