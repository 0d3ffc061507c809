// gslab scenario runner.
//
// Exit status: 0 success, 2 invalid input, 3 failed numerical diagnostic,
// 1 anything else.

#include <CLI11.hpp>
#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "gslab/error.hpp"
#include "gslab/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"gslab: proper condensate laboratory"};
  std::string config_path;
  std::string scenario;
  std::string out_dir;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "flat key = value configuration file");
  auto* scenario_opt = app.add_option("--scenario", scenario, "scenario name, or 'all'");
  auto* out_opt = app.add_option("--out", out_dir, "output directory (default gslab-out)");
  auto* seed_opt = app.add_option("--seed", seed, "random seed (default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    gslab::ScenarioConfig config;
    if (!config_path.empty()) config = gslab::load_config(config_path);
    if (*scenario_opt) config.scenario = scenario == "all" ? "" : scenario;
    if (*out_opt) config.out_dir = out_dir;
    if (*seed_opt) config.seed = seed;
    for (const auto& path : gslab::run_scenario(config)) std::cout << path.string() << '\n';
    return 0;
  } catch (const gslab::ValidationError& e) {
    std::cerr << "gslab: invalid input: " << e.what() << '\n';
    return 2;
  } catch (const gslab::NumericalError& e) {
    std::cerr << "gslab: numerical diagnostic failed: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "gslab: " << e.what() << '\n';
    return 1;
  }
}
