#pragma once

#include <cstddef>
#include <vector>

#include "dpl/accumulator.hpp"
#include "dpl/problem.hpp"

namespace dpl {

/// Evolving state of the first-order system (T, q, v = dq/dt), plus the
/// running time integrals the analysis layer reads.
///
/// acc_T, acc_q, acc_gradT, acc_supply accumulate the nodal histories needed
/// by the delay-weighted transforms; acc_energy tracks the six spatial
/// integrals the balance identity is assembled from (see transient.cpp);
/// acc_g tracks the data norm g and its exponentially weighted variant.
struct TransientState {
  double t = 0.0;
  Field T, q, v;
  IntegralAccumulator acc_T;
  IntegralAccumulator acc_q;
  IntegralAccumulator acc_gradT;
  IntegralAccumulator acc_supply;
  IntegralAccumulator acc_energy;
  IntegralAccumulator acc_g;
};

/// Time rates of (T, q, v) as assembled by the spatial discretization.
struct Rates {
  Field dT, dq, dv;
};

/// Step-size policy for the explicit march.  dt == 0 requests the automatic
/// step min(cfl_safety*dx/c_char, relax_safety*tau_q), rounded down so an
/// integer number of steps lands exactly on t_end.
struct StepControl {
  double dt = 0.0;
  double cfl_safety = 0.5;
  double relax_safety = 0.5;
  double t_end = 1.0;
  std::size_t observer_stride = 1;
  std::vector<double> snapshot_times;
  /// When false, an explicitly supplied dt may exceed the stability bounds
  /// (used to demonstrate the divergence boundary, never in production runs).
  bool enforce_stability = true;

  void validate() const;
};

struct Snapshot {
  double t = 0.0;
  Field T, q, v;
};

/// Everything a finished run exposes: strided samples (always including the
/// initial and final instants), requested snapshots, the final state with
/// live accumulators, and whole-run extrema.
struct TrajectoryRecord {
  std::vector<Snapshot> samples;
  std::vector<Snapshot> snapshots;
  std::size_t steps = 0;
  double dt = 0.0;
  double wall_seconds = 0.0;
  double max_abs_T = 0.0;
  double max_abs_q = 0.0;
  TransientState final_state;
};

/// Callback sampled at the observer stride (and at the first/last instant).
class Observer {
 public:
  virtual ~Observer() = default;
  virtual void on_sample(const TransientState& state) = 0;
};

/// Maximal signal speed of the principal part of the governing hyperbolic
/// equation, c_char = (1/tau_q)*sqrt(2*tau_T*k_max/a_min).  Both delays must
/// be positive; otherwise the principal part degenerates.
double characteristic_speed(const MaterialField& m, const DelayPair& d);

/// Explicit classical Runge-Kutta march of the rod problem.
class TransientSolver {
 public:
  explicit TransientSolver(Problem problem);

  const Problem& problem() const { return problem_; }

  double characteristic_speed() const { return c_char_; }

  /// Largest stable automatic step under the control's safety factors.
  double stable_dt(const StepControl& ctl) const;

  /// State at t = 0 with all accumulators seeded with their initial samples.
  TransientState initial_state() const;

  /// Assembled rates at the state's time, with the boundary data imposed on
  /// a copy of the fields before differencing.
  Rates rhs(const TransientState& state) const;

  /// One RK4 step of size dt; advances the accumulators with the post-step
  /// samples.  step_index only labels a potential divergence report.
  void step(TransientState& state, double dt, std::size_t step_index) const;

  /// Full march to ctl.t_end, notifying observers at the configured stride.
  TrajectoryRecord run(const StepControl& ctl,
                       const std::vector<Observer*>& observers = {}) const;

  /// Static field phi = tau_T*dT0/dx + K*(tau_q*q0 + tau_q^2/2*qdot0).
  const Field& phi() const { return phi_; }

  /// Supply-plus-initial-data field R*(x, t) at the state's current time.
  Field r_star(const TransientState& state) const;

 private:
  void impose_boundary(double t, Field& T, Field& q, Field& v) const;
  void rhs_imposed(double t, const Field& T, const Field& q, const Field& v,
                   Rates& out) const;
  Field energy_integrands(const TransientState& state) const;
  void push_accumulators(TransientState& state) const;

  Problem problem_;
  double dx_;
  double c_char_;
  Field phi_;
  Field grad_T0_;
  double sigma_sq_ = 0.0;  // 0 when the exponential weight is not defined
};

}  // namespace dpl
