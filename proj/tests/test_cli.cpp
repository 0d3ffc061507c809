#include <doctest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gslab/csv.hpp"
#include "gslab/error.hpp"
#include "gslab/scenario.hpp"
#include "gslab/testfunctions.hpp"

using namespace gslab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("gslab_unit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(GSLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

ScenarioConfig config_from(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = config_from("# demo\nscenario = classify\nkappa = 3   # comment\n\nseed = 42\nregion = 0, 1\n");
  CHECK(c.scenario == "classify");
  CHECK(c.seed == 42);
  CHECK(c.params.at("kappa") == "3");
  CHECK(c.params.at("region") == "0, 1");
  CHECK(config_from("scenario = all\n").scenario.empty());
  CHECK_THROWS_AS(config_from("[section]\n"), ValidationError);
  CHECK_THROWS_AS(config_from("kappa = {3}\n"), ValidationError);
  CHECK_THROWS_AS(config_from("kappa = [3, 4]\n"), ValidationError);
  CHECK_THROWS_AS(config_from("kappa 3\n"), ValidationError);
  CHECK_THROWS_AS(config_from("kappa = 3\nkappa = 4\n"), ValidationError);
  CHECK_THROWS_AS(config_from("a.b = 3\n"), ValidationError);
  CHECK_THROWS_AS(config_from("seed = -1\n"), ValidationError);
  CHECK_THROWS_AS(config_from("seed = 99999999999999999999999\n"), ValidationError);
}

TEST_CASE("every scenario declares a complete default set") {
  for (const auto& name : scenario_names()) CHECK_FALSE(scenario_defaults(name).empty());
  CHECK_THROWS_AS(scenario_defaults("nope"), ValidationError);
}

TEST_CASE("unknown keys are rejected") {
  ScenarioConfig c;
  c.out_dir = scratch("unknown");
  c.scenario = "resolvent";
  c.params["kappa"] = "2";
  CHECK_THROWS_AS(run_scenario(c), ValidationError);
  c.scenario.clear();
  c.params = {{"no_such_key", "1"}};
  CHECK_THROWS_AS(run_scenario(c), ValidationError);
  c.scenario = "resolvent";
  c.params = {{"p_list", "0.5, abc"}};
  CHECK_THROWS_AS(run_scenario(c), ValidationError);
}

TEST_CASE("classify scenario with kappa = 0.5 reports Regular") {
  ScenarioConfig c;
  c.out_dir = scratch("classify");
  c.scenario = "classify";
  c.params = {{"kappa", "0.5"}, {"function", "indicator"}};
  run_scenario(c);
  const std::string text = slurp(c.out_dir / "classify.csv");
  CHECK(text.rfind("verdict,Regular\n", 0) == 0);
}

TEST_CASE("limit scenario contains 1 - 1/e in both columns") {
  ScenarioConfig c;
  c.out_dir = scratch("limit");
  c.scenario = "limit";
  run_scenario(c);
  std::ifstream in(c.out_dir / "limit.csv");
  const Table t = read_table(in);
  bool found = false;
  for (const auto& row : t.rows()) {
    if (std::stod(row[0]) == 1.0 && std::stod(row[1]) == 1.0) {
      found = true;
      CHECK(std::abs(std::stod(row[2]) - 0.6321206) < 1e-7);
      CHECK(std::abs(std::stod(row[3]) - 0.6321206) < 1e-7);
    }
  }
  CHECK(found);
}

TEST_CASE("wave function CSV round trip") {
  const fs::path dir = scratch("roundtrip");
  for (const auto& f : {exact_moment_function(1.0, 2, 1001), normalized_indicator(RegionSpec::interval(-0.3, 2.1), 77)}) {
    std::stringstream ss;
    write_wavefunction(ss, f);
    const auto back = read_wavefunction(ss);
    REQUIRE(back.values().size() == f.values().size());
    for (std::size_t i = 0; i < f.values().size(); ++i) {
      CHECK(std::abs(back.values()[i] - f.values()[i]) <= 1e-15);
      CHECK(std::abs(back.grid().coordinate(0, i) - f.grid().coordinate(0, i)) <= 1e-15);
    }
  }
  for (const std::string trap : {"harmonic", "asymmetric"}) {
    ScenarioConfig c;
    c.out_dir = dir / trap;
    c.scenario = "ground-state";
    c.params = {{"trap", trap}, {"resolution", "512"}};
    run_scenario(c);
    std::ifstream in(c.out_dir / "ground_state.csv");
    const auto back = read_wavefunction(in);
    std::ostringstream again;
    write_wavefunction(again, back);
    CHECK(again.str() == slurp(c.out_dir / "ground_state.csv"));
  }
  std::istringstream bad("# gslab-wavefunction v1\n0,1\n1,1\n3,1\n");
  CHECK_THROWS_AS(read_wavefunction(bad), ValidationError);
  std::stringstream complex;
  CHECK_THROWS_AS(write_wavefunction(complex, normalized_indicator(RegionSpec::interval(0, 1), 11).scaled({0, 1})),
                  ValidationError);
}

TEST_CASE("table formatting") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(1.0 / 0.0) == "inf");
  CHECK(format_real(-1.0 / 0.0) == "-inf");
  CHECK(format_real(std::nan("")) == "nan");
  Table t({"a", "b"});
  t.add_numeric_row({1.0, 2.5});
  CHECK_THROWS_AS(t.add_row({"x"}), ValidationError);
  std::stringstream ss;
  write_table(ss, t);
  CHECK(ss.str() == "# gslab-table v1; columns: a,b\n1,2.5\n");
  const Table back = read_table(ss);
  CHECK(back.columns() == t.columns());
  CHECK(back.rows() == t.rows());
}

TEST_CASE("in-process runs are byte-identical") {
  for (const auto& name : {"classify", "witness", "fock-verify"}) {
    ScenarioConfig c;
    c.scenario = name;
    c.seed = 5;
    if (std::string(name) == "classify") c.params = {{"function", "bump"}, {"region", "-1, 1"}};
    c.out_dir = scratch(std::string("det_a_") + name);
    const auto a = run_scenario(c);
    c.out_dir = scratch(std::string("det_b_") + name);
    const auto b = run_scenario(c);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(slurp(a[i]) == slurp(b[i]));
  }
}

TEST_CASE("the seed changes random test functions") {
  ScenarioConfig c;
  c.scenario = "classify";
  c.params = {{"function", "bump"}, {"region", "-1, 1"}};
  const fs::path first = scratch("seed_a");
  c.out_dir = first;
  run_scenario(c);
  c.seed = 1;
  c.out_dir = scratch("seed_b");
  run_scenario(c);
  CHECK(slurp(first / "classify.csv") != slurp(c.out_dir / "classify.csv"));
}

TEST_CASE("command line exit statuses") {
  const fs::path dir = scratch("exit");
  const fs::path cfg = dir / "bad.cfg";
  std::ofstream(cfg) << "scenario = resolvent\nnot_a_key = 1\n";
  CHECK(run_cli("--config " + cfg.string() + " --out " + (dir / "o").string()) == 2);
  CHECK(run_cli("--scenario nope --out " + (dir / "o").string()) == 2);
  CHECK(run_cli("--bogus") == 2);
  CHECK(run_cli("--help") == 0);
  const fs::path snap = dir / "snap.cfg";
  std::ofstream(snap) << "scenario = onset\nlambda_min = 0.1\nlambda_max = 10\n";
  CHECK(run_cli("--config " + snap.string() + " --out " + (dir / "o").string()) == 3);
  CHECK(run_cli("--scenario witness --seed 3 --out " + (dir / "w").string()) == 0);
  CHECK(fs::exists(dir / "w" / "witness.csv"));
}

TEST_CASE("flags override the config file") {
  const fs::path dir = scratch("override");
  const fs::path cfg = dir / "c.cfg";
  std::ofstream(cfg) << "scenario = resolvent\nout = " << (dir / "from_config").string() << "\n";
  CHECK(run_cli("--config " + cfg.string() + " --scenario witness --out " + (dir / "from_flag").string()) == 0);
  CHECK(fs::exists(dir / "from_flag" / "witness.csv"));
  CHECK_FALSE(fs::exists(dir / "from_config"));
}
