#pragma once

#include <cmath>
#include <string>

#include "dpl/errors.hpp"

namespace dpl {

/// Delay-time regimes. Exactly one applies to any valid pair.
enum class Regime {
  Stable,              // tau_q <= 2 tau_T (thermodynamically compatible)
  Growth,              // 0 < 2 tau_T < tau_q (solutions may grow exponentially)
  DegenerateZeroTauT,  // tau_T = 0 < tau_q (expected ill-posed)
};

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::Stable: return "stable";
    case Regime::Growth: return "growth";
    case Regime::DegenerateZeroTauT: return "degenerate-zero-tau-T";
  }
  return "?";
}

/// The two delay times of the conduction law: tau_q on the heat flux,
/// tau_T on the temperature gradient.
struct DelayPair {
  double tau_q = 0.0;
  double tau_T = 0.0;

  DelayPair(double tq, double tT) : tau_q(tq), tau_T(tT) {
    if (!(std::isfinite(tau_q) && std::isfinite(tau_T)))
      throw ValidationError("delay times must be finite");
    if (tau_q < 0.0 || tau_T < 0.0)
      throw ValidationError("delay times must be nonnegative");
  }

  Regime regime() const {
    if (tau_q <= 2.0 * tau_T) return Regime::Stable;
    if (tau_T > 0.0) return Regime::Growth;
    return Regime::DegenerateZeroTauT;
  }

  /// sigma^2 = 1/tau_T - 2/tau_q, the growth-regime rate. Defined only
  /// when both delays are positive; positive exactly in the Growth regime.
  bool has_sigma_sq() const { return tau_T > 0.0 && tau_q > 0.0; }

  double sigma_sq() const {
    if (!has_sigma_sq())
      throw DegenerateModelError("sigma^2 requires tau_T > 0 and tau_q > 0");
    return 1.0 / tau_T - 2.0 / tau_q;
  }
};

inline Regime classify_regime(const DelayPair& d) { return d.regime(); }

}  // namespace dpl
