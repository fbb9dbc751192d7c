#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "dpl/errors.hpp"

namespace dpl {

using Field = std::vector<double>;

/// 1D rod occupying [-h, L]: the loaded extension [-h, 0] plus the free
/// part [0, L]. Uniform node spacing.
struct Geometry1D {
  double h = 1.0;
  double L = 1.0;
  std::size_t n_cells = 16;

  Geometry1D(double h_, double L_, std::size_t cells)
      : h(h_), L(L_), n_cells(cells) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("h must be > 0");
    if (!(L > 0.0) || !std::isfinite(L)) throw ValidationError("L must be > 0");
    if (n_cells < 16) throw ValidationError("n_cells must be >= 16");
  }

  double dx() const { return (h + L) / static_cast<double>(n_cells); }
  std::size_t n_nodes() const { return n_cells + 1; }
  double x(std::size_t i) const { return -h + static_cast<double>(i) * dx(); }

  std::vector<double> nodes() const {
    std::vector<double> xs(n_nodes());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = x(i);
    return xs;
  }
};

/// 2D strip cross-section for the steady amplitude problem: x1 in [0, W]
/// (clamped sides), x3 in [0, L] (loaded base at 0, clamped far end at L).
struct StripGeometry {
  double W = std::numbers::pi;
  double L = std::numbers::pi;
  std::size_t nx1 = 33;
  std::size_t nx3 = 33;

  StripGeometry(double W_, double L_, std::size_t n1, std::size_t n3)
      : W(W_), L(L_), nx1(n1), nx3(n3) {
    if (!(W > 0.0) || !(L > 0.0)) throw ValidationError("W, L must be > 0");
    if (nx1 < 5 || nx3 < 5) throw ValidationError("nx1, nx3 must be >= 5");
  }

  double dx1() const { return W / static_cast<double>(nx1 - 1); }
  double dx3() const { return L / static_cast<double>(nx3 - 1); }
  double x1(std::size_t i) const { return static_cast<double>(i) * dx1(); }
  double x3(std::size_t j) const { return static_cast<double>(j) * dx3(); }
  std::size_t n_nodes() const { return nx1 * nx3; }
  std::size_t index(std::size_t i1, std::size_t j3) const { return j3 * nx1 + i1; }

  /// Lowest clamped-membrane eigenvalue of the interval cross-section.
  double lambda() const {
    const double p = std::numbers::pi / W;
    return p * p;
  }

  /// Its discrete counterpart on this grid; always <= lambda().
  double lambda_disc() const {
    const double d = dx1();
    return 2.0 / (d * d) * (1.0 - std::cos(std::numbers::pi * d / W));
  }
};

}  // namespace dpl
