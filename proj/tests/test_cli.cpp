#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dpl/config.hpp"
#include "dpl/errors.hpp"
#include "dpl/experiments.hpp"
#include "helpers.hpp"

using namespace dpl;
using dpl::testing::scratch_dir;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

constexpr const char* kTinyUniqueness = R"([experiment]
kind = uniqueness-zero-data
name = tiny
t_end = 0.25
[geometry]
nodes = 33
[delays]
tau_q = 1
tau_T = 1
)";

constexpr const char* kTinyDependence = R"([experiment]
kind = continuous-dependence
name = tiny-dep
t_end = 0.25
[geometry]
nodes = 65
[delays]
tau_q = 1
tau_T = 1
[initial]
T0 = gaussian(0,0.15,1)
)";

}  // namespace

TEST_CASE("every shipped preset parses and names a valid kind") {
  const auto all = presets();
  REQUIRE(all.size() >= 10);
  for (const auto& [name, text] : all) {
    const ExperimentConfig cfg = parse_config_text(text, name);
    CHECK(!cfg.kind.empty());
    CHECK(cfg.name == name);
  }
  CHECK(preset_text("stable") == preset_text("stable"));
  CHECK_THROWS_AS(preset_text("nonsense"), ConfigError);
}

TEST_CASE("passing experiments exit clean and write their artifacts") {
  const std::string dir = scratch_dir("uniq");
  const ExperimentConfig cfg = parse_config_text(kTinyUniqueness, "tiny");
  const ExperimentResult res = run_experiment(cfg, dir);
  CHECK(res.passed);
  CHECK(res.exit_code == 0);
  CHECK(std::filesystem::exists(dir + "/summary.json"));
  CHECK(std::filesystem::exists(dir + "/report.txt"));
  CHECK(slurp(dir + "/report.txt").find("PASS") != std::string::npos);
}

TEST_CASE("a failed claim maps to exit code 1") {
  // Uniqueness run with nonzero data cannot stay at zero.
  std::string text = kTinyUniqueness;
  text += "[initial]\nT0 = gaussian(0,0.2,1)\n";
  const ExperimentConfig cfg = parse_config_text(text, "tiny");
  const ExperimentResult res = run_experiment(cfg, scratch_dir("uniq-fail"));
  CHECK_FALSE(res.passed);
  CHECK(res.exit_code == 1);
}

TEST_CASE("identical configs produce bit-identical artifacts") {
  const ExperimentConfig cfg = parse_config_text(kTinyDependence, "tiny-dep");
  const std::string d1 = scratch_dir("det1"), d2 = scratch_dir("det2");
  run_experiment(cfg, d1);
  run_experiment(cfg, d2);
  CHECK(slurp(d1 + "/energy.csv") == slurp(d2 + "/energy.csv"));
  CHECK(slurp(d1 + "/summary.json") == slurp(d2 + "/summary.json"));
  // Full 17-digit formatting keeps the CSV regression-comparable.
  CHECK(slurp(d1 + "/energy.csv").find('.') != std::string::npos);
}

TEST_CASE("plot scripts are emitted next to the data they reference") {
  const std::string dir = scratch_dir("plots");
  const ExperimentConfig cfg = parse_config_text(kTinyDependence, "tiny-dep");
  run_experiment(cfg, dir + "/tiny-dep");
  emit_plots(dir);
  CHECK(std::filesystem::exists(dir + "/tiny-dep/energy.gp"));
  CHECK(slurp(dir + "/tiny-dep/energy.gp").find("energy.csv") !=
        std::string::npos);

  const std::string empty = scratch_dir("plots-empty");
  CHECK_THROWS_AS(emit_plots(empty), ConfigError);
  try {
    emit_plots(empty);
  } catch (const ConfigError& e) {
    // The error names the files it was looking for.
    CHECK(std::string(e.what()).find("energy.csv") != std::string::npos);
  }
}

TEST_CASE("divergent marches surface as exit code 3 with advice") {
  std::string text = R"([experiment]
kind = uniqueness-zero-data
name = blowup
t_end = 60
dt = 0.1
enforce_stability = false
[geometry]
nodes = 17
[delays]
tau_q = 0.05
tau_T = 0.00125
[initial]
T0 = gaussian(0,0.12,1)
)";
  const ExperimentConfig cfg = parse_config_text(text, "blowup");
  CHECK_FALSE(cfg.control.enforce_stability);
  const ExperimentResult res = run_experiment(cfg, scratch_dir("blowup"));
  CHECK(res.exit_code == 3);
  bool advised = false;
  for (const auto& line : res.lines)
    advised = advised || line.find("advice") != std::string::npos;
  CHECK(advised);
}
