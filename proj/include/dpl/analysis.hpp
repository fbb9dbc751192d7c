#pragma once

#include <limits>
#include <vector>

#include "dpl/transient.hpp"

namespace dpl {

/// Static data of the gradient-integrated auxiliary problem: its initial
/// conditions and the material-weighted source field phi.
struct TildeData {
  Field phi;           ///< tau_T*dT0/dx + K*(tau_q*q0 + tau_q^2/2*qdot0)
  Field tilde_T0;      ///< tau_T*T0
  Field tilde_q0;      ///< tau_T*q0
  Field tilde_q0_dot;  ///< q0 + tau_T*qdot0
};

TildeData make_tilde_data(const Problem& p);

/// Supply-plus-initial-data field of the same problem at the state's time,
/// R*(x,t) = rho*r_tilde + a*T0.
Field tilde_r_star(const Problem& p, const TransientState& state);

/// Static data of the flux-integrated auxiliary problem.  Its source fields
/// are affine in time: vartheta(t) = vartheta_slope*t + vartheta_offset.
struct HatData {
  Field hat_T0;           ///< tau_q^2/2*T0
  Field hat_q0;           ///< tau_q^2/2*q0
  Field hat_q0_dot;       ///< tau_q*q0 + tau_q^2/2*qdot0
  Field vartheta_slope;   ///< tau_T*k*dT0/dx + tau_q*q0 + tau_q^2/2*qdot0
  Field vartheta_offset;  ///< tau_q^2/2*q0

  Field vartheta(double t) const;
};

HatData make_hat_data(const Problem& p);

/// Supply field of the flux-integrated problem at the state's time,
/// R(x,t) = rho*r_hat + a*(t+tau_q)*T0.
Field hat_R(const Problem& p, const TransientState& state);

/// int a*Ttilde(0)^2 + tau_T*tau_q^2/2 * int K*q0.q0, the initial-data
/// constant on the right-hand side of the balance identity.
double initial_energy_constant(const Problem& p);

/// Data bracket under the square root of both continuous-dependence bounds,
/// (S/2)*int[a*Ttilde(0)^2 + tau_T*tau_q^2/2*K*q0.q0 + tau_T*k_max*phi.phi]
/// + (S^2/4)*k_max*int phi.phi, with horizon S fixed to the run length.
double data_bracket(const Problem& p, double S);

/// Energy functional E(t) = 1/2 int0t int a*Ttilde^2 + 1/2 int0t int0s int K q'.q',
/// read off the state's running integrals.
double energy_E(const TransientState& state);

/// Augmented functional F(t) = E(t) + tau_T*tau_q^2/4 int0t int K q.q.
double energy_F(const TransientState& state, const DelayPair& d);

/// Left- and right-hand sides of the exact balance identity, and the
/// residual LHS - RHS that the discretization is required to shrink.
double conservation_lhs(const TransientState& state, const DelayPair& d);
double conservation_rhs(const TransientState& state, const DelayPair& d,
                        double initial_constant);
double conservation_residual(const TransientState& state, const Problem& p);

/// Continuous-dependence bound values at one instant.  g_int is the running
/// integral of g; weighted_g_int is the integral of exp(-sigma^2 s) g(s).
double stable_bound_value(double g_int, double bracket);
double growth_bound_value(double t, double weighted_g_int, double sigma_sq,
                          double bracket);

/// Per-run energy series: functionals, identity residual, the regime bound
/// and the running data-norm integral, sampled at the observer stride.
///
/// The two aggregates skip the quadrature startup layer: during the first few
/// steps every history integral is built from a handful of trapezoid panels,
/// so ratios of quantities that all start at zero are dominated by startup
/// error rather than by anything the run certifies.  Samples taken before
/// the accumulators hold eight panels are recorded in the series but do not
/// enter max_rel_residual or min_margin; the final sample always does.
struct EnergyReport {
  Regime regime = Regime::Stable;
  double sigma_sq = std::numeric_limits<double>::quiet_NaN();
  double horizon = 0.0;  ///< S used in the bounds (the run length)
  double bracket = 0.0;  ///< data bracket under the square root
  std::vector<double> times, E, F, residual, rel_residual, bound, g_cum;
  /// Magnitude max(|lhs|, |rhs|) of the balance terms at each sample; the
  /// scale against which the residual of that sample is measured.
  std::vector<double> scale;
  double max_rel_residual = 0.0;
  /// min over samples of (bound - sqrt(functional))/bound; >= -1e-8 expected.
  double min_margin = 0.0;

  bool has_bound() const { return regime != Regime::DegenerateZeroTauT; }
};

/// Observer assembling an EnergyReport online.  Requires the homogeneous
/// boundary setting of the dependence theorem (zero traces on both ends).
class EnergyObserver final : public Observer {
 public:
  EnergyObserver(const Problem& p, double t_end);

  void on_sample(const TransientState& state) override;
  const EnergyReport& report() const { return report_; }

 private:
  DelayPair delays_;
  double initial_constant_;
  EnergyReport report_;
};

}  // namespace dpl
