#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "dpl/problem.hpp"
#include "dpl/profiles.hpp"

namespace dpl::testing {

/// Uniform-material rod on [-h, L] with temperature-zero ends and the given
/// initial temperature profile (flux data zero, no supply).
inline Problem make_rod(double h, double L, std::size_t cells,
                        const DelayPair& d, const std::string& T0 = "zero",
                        double a = 1.0, double k = 1.0) {
  Geometry1D geom(h, L, cells);
  const auto xs = geom.nodes();
  ProblemData data;
  data.T0 = Profile::parse(T0, -h, L).sample(xs);
  data.q0 = Field(xs.size(), 0.0);
  data.qdot0 = Field(xs.size(), 0.0);
  data.supply = [](double, double) { return 0.0; };
  return Problem(geom, MaterialField::uniform(xs.size(), a, k), d,
                 std::move(data), BoundaryCondition::temperature_zero(),
                 BoundaryCondition::temperature_zero());
}

/// Fresh scratch directory under the build tree.
inline std::string scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "dpl-tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0 ? std::abs(a - b) / scale : 0.0;
}

}  // namespace dpl::testing
