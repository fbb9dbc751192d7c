#pragma once

#include <functional>
#include <utility>

#include "dpl/delay.hpp"
#include "dpl/grid.hpp"
#include "dpl/material.hpp"

namespace dpl {

/// Scalar signal of time, used for boundary data.
using TimeFn = std::function<double(double t)>;

/// What is prescribed at one end of the rod: either the temperature trace or
/// the outward normal component of the heat flux.
enum class BoundaryKind { Temperature, NormalFlux };

struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::Temperature;
  TimeFn value;   ///< prescribed trace as a function of time
  TimeFn rate;    ///< time derivative of the trace (needed for flux ends)
  bool homogeneous = false;  ///< true only when constructed as identically zero

  static BoundaryCondition temperature(TimeFn f, TimeFn fdot = zero_fn());
  static BoundaryCondition temperature_zero();
  static BoundaryCondition flux(TimeFn f, TimeFn fdot = zero_fn());
  static BoundaryCondition flux_zero();
  static TimeFn zero_fn() {
    return [](double) { return 0.0; };
  }
};

/// Initial data and supply for the transient problem.  The flux history
/// enters through both its initial value and its initial time rate.
struct ProblemData {
  Field T0;      ///< initial temperature variation
  Field q0;      ///< initial heat flux
  Field qdot0;   ///< initial time derivative of the heat flux
  SupplyFn supply = [](double, double) { return 0.0; };
};

/// Complete statement of a transient run on a 1-D rod.
struct Problem {
  Geometry1D geometry;
  MaterialField material;
  DelayPair delays;
  ProblemData data;
  BoundaryCondition left;   ///< condition at x = -h
  BoundaryCondition right;  ///< condition at x = L

  Problem(Geometry1D g, MaterialField m, DelayPair d, ProblemData pd,
          BoundaryCondition l, BoundaryCondition r);

  /// True when both ends carry identically zero data, the setting required
  /// by the energy identities.
  bool homogeneous_boundary() const {
    return left.homogeneous && right.homogeneous;
  }
};

}  // namespace dpl
