#pragma once

#include <vector>

#include "dpl/transient.hpp"

namespace dpl {

/// Explicit propagation-speed bound valid when 0 < tau_q <= 2 tau_T:
/// c0 = sqrt(k_max/a_min) * sqrt(2 tau_T/tau_q^2 + 1/(tau_T + tau_q)).
double speed_bound_stable(const MaterialField& m, const DelayPair& d);

/// Explicit propagation-speed bound valid when 0 < 2 tau_T < tau_q:
/// c1 = (1/tau_q) sqrt(tau_T k_max/a_min)
///      * sqrt((5 tau_q^2 + 2 tau_T^2 - 6 tau_q tau_T)
///             / (tau_T^2 + 2 tau_q^2 - 3 tau_T tau_q)).
double speed_bound_growth(const MaterialField& m, const DelayPair& d);

/// Regime-appropriate bound (c0 or c1).
double speed_bound(const MaterialField& m, const DelayPair& d);

/// Wavefront history of a run whose data is supported in [-h, 0]: where the
/// fields exceed a support threshold, how fast that edge moves, and whether
/// everything beyond the certified cone stayed quiet.
struct FrontRecord {
  std::vector<double> times;
  std::vector<double> front_position;  ///< largest x above threshold, or -h
  std::vector<double> cone_position;   ///< c_bound * t, clipped to the rod
  Regime regime = Regime::Stable;
  double c_bound = 0.0;     ///< c0 or c1 per regime
  double c_char = 0.0;      ///< characteristic speed of the principal part
  double c_empirical = 0.0; ///< least-squares slope of the interior front
  double peak0 = 0.0;       ///< max over nodes of max(|T0|, |q0|)
  double threshold_abs = 0.0;
  double worst_excess = 0.0;  ///< max |field|/peak0 observed beyond the cone
  bool confined = false;      ///< worst_excess <= confinement tolerance
  bool truncated = false;     ///< front reached the right boundary
};

/// Scan strided samples for the support edge of max(|T|, |q|) at
/// rel_threshold * initial peak, check confinement beyond x = c*t at
/// confine_tol * initial peak, and fit the empirical front speed.
/// The initial sample must be supported in [-h, 0] up to the threshold.
FrontRecord track_front(const std::vector<Snapshot>& samples,
                        const Problem& problem, double rel_threshold = 1e-8,
                        double confine_tol = 1e-8);

}  // namespace dpl
