#pragma once

#include <functional>
#include <vector>

#include "dpl/grid.hpp"

namespace dpl {

/// Heat supply density rho*r as a function of (x, t).
using SupplyFn = std::function<double(double x, double t)>;

/// Nodal thermal capacity a(x) and conductivity k(x), together with the
/// extremal bounds the stability and speed estimates depend on.  The node
/// count is generic so the same type serves the 1-D rod and the 2-D strip
/// (row-major).  Both fields must be strictly positive everywhere.
class MaterialField {
 public:
  MaterialField(Field a, Field k);

  /// Uniform material shortcut.
  static MaterialField uniform(std::size_t n_nodes, double a, double k);

  const Field& a() const { return a_; }
  const Field& k() const { return k_; }
  double a(std::size_t i) const { return a_[i]; }
  double k(std::size_t i) const { return k_[i]; }

  /// Thermal resistivity K = 1/k at node i.
  double K(std::size_t i) const { return 1.0 / k_[i]; }

  double a_min() const { return a_min_; }
  double a_max() const { return a_max_; }
  double k_min() const { return k_min_; }
  double k_max() const { return k_max_; }

  /// Smallest resistivity eigenvalue over the grid, K_m = 1 / k_max.
  double K_min() const { return 1.0 / k_max_; }

  std::size_t n_nodes() const { return a_.size(); }

 private:
  Field a_;
  Field k_;
  double a_min_, a_max_, k_min_, k_max_;
};

}  // namespace dpl
