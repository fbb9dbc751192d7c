#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "dpl/problem.hpp"
#include "dpl/transient.hpp"

namespace dpl {

/// Everything needed to rebuild the rod problem at any resolution: geometry
/// extents, analytic profile texts, material constants, delays and constant
/// boundary traces.  Profiles are re-sampled per build so refinement studies
/// stay faithful to the configured data.
struct ProblemTemplate {
  double h = 1.0;
  double L = 1.0;
  std::size_t n_cells = 256;
  std::string a_text = "1";
  std::string k_text = "1";
  DelayPair delays{1.0, 1.0};
  std::string T0_text = "zero";
  std::string q0_text = "zero";
  std::string qdot0_text = "zero";
  std::string supply_text = "zero";
  double supply_omega = 0.0;  ///< supply r(x,t) = profile(x) * cos(omega t)
  BoundaryKind left_kind = BoundaryKind::Temperature;
  BoundaryKind right_kind = BoundaryKind::Temperature;
  double left_value = 0.0;
  double right_value = 0.0;

  /// Build with the stored resolution, or override the cell count.
  Problem build(std::size_t n_cells_override = 0) const;
};

/// Strip description for the time-harmonic experiments.
struct StripTemplate {
  double W = 3.141592653589793;
  double L = 12.566370614359172;
  std::size_t nx1 = 129;
  std::size_t nx3 = 513;
  double a_value = 1.0;
  double k_value = 1.0;
  std::string h_text = "sine(1)";
  std::vector<double> omegas{0.5};
  double envelope_tol = 0.05;
};

/// One parsed experiment: which named check to run and on what data.
struct ExperimentConfig {
  std::string kind;
  std::string name;
  ProblemTemplate problem;
  StepControl control;
  std::size_t levels = 3;          ///< refinement levels for the ladder kinds
  double front_threshold = 1e-8;   ///< support threshold (relative to peak)
  std::optional<StripTemplate> strip;
  DelayPair delays{1.0, 1.0};      ///< shared with the strip experiments
  std::string output_dir;          ///< optional per-config output override
};

/// Parse the sectioned key = value format.  origin names the source in
/// error messages; parse errors carry 1-based line numbers.
ExperimentConfig parse_config(std::istream& in, const std::string& origin);
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin);
ExperimentConfig load_config(const std::string& path);

}  // namespace dpl
