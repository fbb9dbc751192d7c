#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dpl/config.hpp"

namespace dpl {

/// Outcome of one experiment: a verdict, an exit code for the harness, and a
/// human-readable report (one line per observation).
struct ExperimentResult {
  std::string name;
  std::string kind;
  bool passed = false;
  int exit_code = 0;  ///< 0 pass, 1 claim failed, 3 numerical breakdown
  std::vector<std::string> lines;

  void note(std::string line) { lines.push_back(std::move(line)); }
};

/// Runs the experiment described by `cfg`, writing CSV/JSON artifacts under
/// `out_dir` (created on demand).  Configuration problems throw; numerical
/// breakdown inside a run is converted into exit code 3.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::string& out_dir);

/// Built-in configurations covering every experiment kind, as (name, config
/// text) pairs.  The text round-trips through the regular parser.
std::vector<std::pair<std::string, std::string>> presets();

/// Returns the preset config text for `name`, or throws ConfigError.
std::string preset_text(const std::string& name);

/// Writes the gnuplot scripts that render the CSV artifacts found in `dir`.
void emit_plots(const std::string& dir);

}  // namespace dpl
