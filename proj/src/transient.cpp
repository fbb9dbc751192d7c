#include "dpl/transient.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "dpl/errors.hpp"
#include "dpl/stencil.hpp"

namespace dpl {

namespace {

constexpr std::size_t kEnergyWidth = 6;  // tracked spatial integrals, see below
constexpr std::size_t kGWidth = 2;       // g and its exp(-sigma^2 s) weighting

bool all_finite(const Field& f) {
  for (double v : f)
    if (!std::isfinite(v)) return false;
  return true;
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

void StepControl::validate() const {
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0))
    throw ValidationError("cfl_safety must lie in (0, 1]");
  if (!(relax_safety > 0.0 && relax_safety <= 1.0))
    throw ValidationError("relax_safety must lie in (0, 1]");
  if (!std::isfinite(t_end) || t_end < 0.0)
    throw ValidationError("t_end must be finite and >= 0");
  if (!std::isfinite(dt) || dt < 0.0)
    throw ValidationError("dt must be finite and >= 0 (0 selects automatic)");
  if (observer_stride == 0)
    throw ValidationError("observer_stride must be >= 1");
  for (double ts : snapshot_times)
    if (!std::isfinite(ts) || ts < 0.0 || ts > t_end)
      throw ValidationError("snapshot times must lie within [0, t_end]");
}

double characteristic_speed(const MaterialField& m, const DelayPair& d) {
  if (d.tau_q == 0.0)
    throw DegenerateModelError(
        "characteristic speed undefined for tau_q = 0 (principal part degenerates)");
  if (d.tau_T == 0.0)
    throw DegenerateModelError(
        "characteristic speed undefined for tau_T = 0 (principal part degenerates)");
  return std::sqrt(2.0 * d.tau_T * m.k_max() / m.a_min()) / d.tau_q;
}

TransientSolver::TransientSolver(Problem problem)
    : problem_(std::move(problem)), dx_(problem_.geometry.dx()) {
  const DelayPair& d = problem_.delays;
  if (d.tau_q == 0.0)
    throw DegenerateModelError(
        "transient march requires tau_q > 0 (state-space form divides by tau_q^2)");
  // The characteristic speed needs tau_T > 0; leave it unset otherwise and
  // let stable_dt() raise if an automatic step is requested.
  c_char_ = d.tau_T > 0.0
                ? dpl::characteristic_speed(problem_.material, d)
                : std::numeric_limits<double>::quiet_NaN();
  grad_T0_ = gradient(problem_.data.T0, dx_);
  const std::size_t n = problem_.geometry.n_nodes();
  phi_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    phi_[i] = d.tau_T * grad_T0_[i] +
              problem_.material.K(i) *
                  (d.tau_q * problem_.data.q0[i] +
                   0.5 * d.tau_q * d.tau_q * problem_.data.qdot0[i]);
  sigma_sq_ = d.has_sigma_sq() ? d.sigma_sq() : 0.0;
}

double TransientSolver::stable_dt(const StepControl& ctl) const {
  if (!std::isfinite(c_char_))
    throw DegenerateModelError(
        "automatic step selection needs tau_T > 0; supply dt explicitly");
  return std::min(ctl.cfl_safety * dx_ / c_char_,
                  ctl.relax_safety * problem_.delays.tau_q);
}

void TransientSolver::impose_boundary(double t, Field& T, Field& q,
                                      Field& v) const {
  const std::size_t last = T.size() - 1;
  // Outward normal is -1 at the left end and +1 at the right end, so a
  // prescribed normal flux xi translates to q = -xi resp. q = +xi.
  if (problem_.left.kind == BoundaryKind::Temperature) {
    T[0] = problem_.left.value(t);
  } else {
    q[0] = -problem_.left.value(t);
    v[0] = -problem_.left.rate(t);
  }
  if (problem_.right.kind == BoundaryKind::Temperature) {
    T[last] = problem_.right.value(t);
  } else {
    q[last] = problem_.right.value(t);
    v[last] = problem_.right.rate(t);
  }
}

void TransientSolver::rhs_imposed(double t, const Field& T, const Field& q,
                                  const Field& v, Rates& out) const {
  const std::size_t n = T.size();
  const MaterialField& m = problem_.material;
  const DelayPair& d = problem_.delays;

  Field grad_q, grad_T, mixed;
  gradient_into(q, dx_, grad_q);
  gradient_into(T, dx_, grad_T);

  out.dT.resize(n);
  out.dq.resize(n);
  out.dv.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = problem_.data.supply(problem_.geometry.x(i), t);
    out.dT[i] = (s - grad_q[i]) / m.a(i);
    out.dq[i] = v[i];
  }
  // At a prescribed-temperature end the trace dictates the rate; the energy
  // equation there would difference fluxes that the boundary does not govern,
  // and the mismatch would leak into the mixed-derivative stencil below.
  if (problem_.left.kind == BoundaryKind::Temperature)
    out.dT[0] = problem_.left.rate(t);
  if (problem_.right.kind == BoundaryKind::Temperature)
    out.dT[n - 1] = problem_.right.rate(t);
  // Mixed space-time derivative of T, taken by differencing the already
  // assembled dT/dt field: one code path, same order as the other stencils.
  gradient_into(out.dT, dx_, mixed);
  const double c = 2.0 / (d.tau_q * d.tau_q);
  for (std::size_t i = 0; i < n; ++i)
    out.dv[i] = c * (-q[i] - d.tau_q * v[i] -
                     m.k(i) * (grad_T[i] + d.tau_T * mixed[i]));
}

Rates TransientSolver::rhs(const TransientState& state) const {
  Field T = state.T, q = state.q, v = state.v;
  impose_boundary(state.t, T, q, v);
  Rates out;
  rhs_imposed(state.t, T, q, v, out);
  return out;
}

Field TransientSolver::energy_integrands(const TransientState& state) const {
  // Spatial integrals feeding the balance identity and the data norm:
  //   [0] int a*Ttilde^2      [1] int K*q'.q'      [2] int K*q.q
  //   [3] int R**Ttilde       [4] int phi*q'       [5] int R*^2/a
  // where Ttilde = T' + tau_T*T, q' is the running time primitive of q and
  // R* = rho*r_tilde + a*T0.
  const std::size_t n = problem_.geometry.n_nodes();
  const MaterialField& m = problem_.material;
  const double tau_T = problem_.delays.tau_T;

  const Field& T_now = state.acc_T.last_sample();
  const Field& q_now = state.acc_q.last_sample();
  const Field& s_now = state.acc_supply.last_sample();
  const Field& T_l1 = state.acc_T.level1();
  const Field& q_l1 = state.acc_q.level1();
  const Field& s_l1 = state.acc_supply.level1();

  Field w0(n), w1(n), w2(n), w3(n), w4(n), w5(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double T_tilde = T_l1[i] + tau_T * T_now[i];
    const double qp = q_l1[i];
    const double r_star = s_l1[i] + tau_T * s_now[i] + m.a(i) * problem_.data.T0[i];
    const double K = m.K(i);
    w0[i] = m.a(i) * T_tilde * T_tilde;
    w1[i] = K * qp * qp;
    w2[i] = K * q_now[i] * q_now[i];
    w3[i] = r_star * T_tilde;
    w4[i] = phi_[i] * qp;
    w5[i] = r_star * r_star / m.a(i);
  }
  return Field{trapezoid(w0, dx_), trapezoid(w1, dx_), trapezoid(w2, dx_),
               trapezoid(w3, dx_), trapezoid(w4, dx_), trapezoid(w5, dx_)};
}

Field TransientSolver::r_star(const TransientState& state) const {
  const std::size_t n = problem_.geometry.n_nodes();
  const Field& s_now = state.acc_supply.last_sample();
  const Field& s_l1 = state.acc_supply.level1();
  const double tau_T = problem_.delays.tau_T;
  Field out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = s_l1[i] + tau_T * s_now[i] +
             problem_.material.a(i) * problem_.data.T0[i];
  return out;
}

void TransientSolver::push_accumulators(TransientState& state) const {
  const double t = state.t;
  state.acc_T.push(t, state.T);
  state.acc_q.push(t, state.q);
  state.acc_gradT.push(t, gradient(state.T, dx_));

  const std::size_t n = problem_.geometry.n_nodes();
  Field s(n);
  for (std::size_t i = 0; i < n; ++i)
    s[i] = problem_.data.supply(problem_.geometry.x(i), t);
  state.acc_supply.push(t, s);

  state.acc_energy.push(t, energy_integrands(state));
  const double g = std::sqrt(std::max(state.acc_energy.level1()[5], 0.0));
  const double weighted =
      problem_.delays.has_sigma_sq() ? std::exp(-sigma_sq_ * t) * g : 0.0;
  state.acc_g.push(t, Field{g, weighted});
}

TransientState TransientSolver::initial_state() const {
  TransientState state;
  state.t = 0.0;
  state.T = problem_.data.T0;
  state.q = problem_.data.q0;
  state.v = problem_.data.qdot0;
  // The trace is authoritative at t = 0: project data that disagrees with the
  // boundary onto it, so every step of the march sees consistent states.
  // Compatible data is untouched.
  impose_boundary(0.0, state.T, state.q, state.v);
  const std::size_t n = problem_.geometry.n_nodes();
  state.acc_T.reset(n);
  state.acc_q.reset(n);
  state.acc_gradT.reset(n);
  state.acc_supply.reset(n);
  state.acc_energy.reset(kEnergyWidth);
  state.acc_g.reset(kGWidth);
  push_accumulators(state);
  return state;
}

void TransientSolver::step(TransientState& state, double dt,
                           std::size_t step_index) const {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw ValidationError("step size must be positive and finite");
  const std::size_t n = state.T.size();
  const double t = state.t;
  const double half = 0.5 * dt;

  Rates k1, k2, k3, k4;
  Field Ts(n), qs(n), vs(n);

  rhs_imposed(t, state.T, state.q, state.v, k1);

  auto stage = [&](const Rates& k, double w, double ts) {
    for (std::size_t i = 0; i < n; ++i) {
      Ts[i] = state.T[i] + w * k.dT[i];
      qs[i] = state.q[i] + w * k.dq[i];
      vs[i] = state.v[i] + w * k.dv[i];
    }
    impose_boundary(ts, Ts, qs, vs);
  };

  stage(k1, half, t + half);
  rhs_imposed(t + half, Ts, qs, vs, k2);
  stage(k2, half, t + half);
  rhs_imposed(t + half, Ts, qs, vs, k3);
  stage(k3, dt, t + dt);
  rhs_imposed(t + dt, Ts, qs, vs, k4);

  const double w = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    state.T[i] += w * (k1.dT[i] + 2.0 * (k2.dT[i] + k3.dT[i]) + k4.dT[i]);
    state.q[i] += w * (k1.dq[i] + 2.0 * (k2.dq[i] + k3.dq[i]) + k4.dq[i]);
    state.v[i] += w * (k1.dv[i] + 2.0 * (k2.dv[i] + k3.dv[i]) + k4.dv[i]);
  }
  state.t = t + dt;
  impose_boundary(state.t, state.T, state.q, state.v);

  if (!all_finite(state.T) || !all_finite(state.q) || !all_finite(state.v))
    throw DivergenceError("non-finite value in the marched fields", step_index);

  push_accumulators(state);
}

TrajectoryRecord TransientSolver::run(
    const StepControl& ctl, const std::vector<Observer*>& observers) const {
  ctl.validate();

  double dt = 0.0;
  std::size_t n_steps = 0;
  if (ctl.t_end > 0.0) {
    const double dt_nominal = ctl.dt > 0.0 ? ctl.dt : stable_dt(ctl);
    // With tau_T = 0 there is no characteristic speed and hence no bound to
    // enforce: an explicit dt is the caller's only option and is taken as is.
    if (ctl.dt > 0.0 && ctl.enforce_stability && std::isfinite(c_char_)) {
      const double limit = stable_dt(ctl);
      if (ctl.dt > limit * (1.0 + 1e-12))
        throw ValidationError(
            "requested dt exceeds the stability bound; lower dt or disable "
            "enforce_stability to study the divergence boundary");
    }
    n_steps = static_cast<std::size_t>(
        std::ceil(ctl.t_end / dt_nominal * (1.0 - 1e-12)));
    n_steps = std::max<std::size_t>(n_steps, 1);
    dt = ctl.t_end / static_cast<double>(n_steps);
  }

  TrajectoryRecord record;
  record.dt = dt;
  record.steps = n_steps;

  // Map each requested snapshot time to the nearest step index.
  std::vector<std::size_t> snap_index(ctl.snapshot_times.size(), 0);
  for (std::size_t j = 0; j < ctl.snapshot_times.size(); ++j)
    snap_index[j] =
        dt > 0.0 ? static_cast<std::size_t>(std::min<double>(
                       std::llround(ctl.snapshot_times[j] / dt),
                       static_cast<double>(n_steps)))
                 : 0;

  const auto t_start = std::chrono::steady_clock::now();
  TransientState state = initial_state();

  auto note_extrema = [&record](const TransientState& s) {
    record.max_abs_T = std::max(record.max_abs_T, max_abs(s.T));
    record.max_abs_q = std::max(record.max_abs_q, max_abs(s.q));
  };
  auto emit = [&](std::size_t k) {
    for (std::size_t j = 0; j < snap_index.size(); ++j)
      if (snap_index[j] == k)
        record.snapshots.push_back({state.t, state.T, state.q, state.v});
    if (k == 0 || k == n_steps || k % ctl.observer_stride == 0) {
      record.samples.push_back({state.t, state.T, state.q, state.v});
      for (Observer* obs : observers)
        if (obs) obs->on_sample(state);
    }
  };

  note_extrema(state);
  emit(0);
  for (std::size_t k = 1; k <= n_steps; ++k) {
    step(state, dt, k);
    note_extrema(state);
    emit(k);
  }

  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  record.final_state = std::move(state);
  return record;
}

}  // namespace dpl
