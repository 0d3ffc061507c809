#pragma once

// Named experiments driven by a flat `key = value` configuration. Each
// scenario declares its keys with defaults and writes CSV files into the
// output directory; identical configurations give byte-identical files.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace gslab {

struct ScenarioConfig {
  /// Empty runs every scenario in order.
  std::string scenario;
  std::map<std::string, std::string> params;
  std::filesystem::path out_dir = "gslab-out";
  std::uint64_t seed = 0;
};

const std::vector<std::string>& scenario_names();

/// Declared keys and default values of one scenario.
const std::map<std::string, std::string>& scenario_defaults(const std::string& name);

/// Lines are `key = value`; `#` starts a comment. The reserved keys
/// `scenario`, `seed` and `out` fill the corresponding fields. Sections,
/// braces, brackets and duplicate keys are rejected.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Checks every key against the selected scenario (or, for an empty
/// scenario, against the union of all scenarios), runs the pipelines and
/// returns the written files in order.
std::vector<std::filesystem::path> run_scenario(const ScenarioConfig& config);

}  // namespace gslab
