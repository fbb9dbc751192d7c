#include "dpl/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "dpl/errors.hpp"
#include "dpl/stencil.hpp"

namespace dpl {

namespace {

constexpr double kTiny = 1e-300;
constexpr std::size_t kStartupPanels = 8;

}  // namespace

TildeData make_tilde_data(const Problem& p) {
  const std::size_t n = p.geometry.n_nodes();
  const DelayPair& d = p.delays;
  const Field grad_T0 = gradient(p.data.T0, p.geometry.dx());
  TildeData out;
  out.phi.resize(n);
  out.tilde_T0.resize(n);
  out.tilde_q0.resize(n);
  out.tilde_q0_dot.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.phi[i] = d.tau_T * grad_T0[i] +
                 p.material.K(i) * (d.tau_q * p.data.q0[i] +
                                    0.5 * d.tau_q * d.tau_q * p.data.qdot0[i]);
    out.tilde_T0[i] = d.tau_T * p.data.T0[i];
    out.tilde_q0[i] = d.tau_T * p.data.q0[i];
    out.tilde_q0_dot[i] = p.data.q0[i] + d.tau_T * p.data.qdot0[i];
  }
  return out;
}

Field tilde_r_star(const Problem& p, const TransientState& state) {
  const std::size_t n = p.geometry.n_nodes();
  const Field& s_now = state.acc_supply.last_sample();
  const Field& s_l1 = state.acc_supply.level1();
  Field out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = s_l1[i] + p.delays.tau_T * s_now[i] +
             p.material.a(i) * p.data.T0[i];
  return out;
}

Field HatData::vartheta(double t) const {
  Field out(vartheta_slope.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = vartheta_slope[i] * t + vartheta_offset[i];
  return out;
}

HatData make_hat_data(const Problem& p) {
  const std::size_t n = p.geometry.n_nodes();
  const DelayPair& d = p.delays;
  const double half_tq2 = 0.5 * d.tau_q * d.tau_q;
  const Field grad_T0 = gradient(p.data.T0, p.geometry.dx());
  HatData out;
  out.hat_T0.resize(n);
  out.hat_q0.resize(n);
  out.hat_q0_dot.resize(n);
  out.vartheta_slope.resize(n);
  out.vartheta_offset.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.hat_T0[i] = half_tq2 * p.data.T0[i];
    out.hat_q0[i] = half_tq2 * p.data.q0[i];
    out.hat_q0_dot[i] = d.tau_q * p.data.q0[i] + half_tq2 * p.data.qdot0[i];
    out.vartheta_slope[i] = d.tau_T * p.material.k(i) * grad_T0[i] +
                            d.tau_q * p.data.q0[i] + half_tq2 * p.data.qdot0[i];
    out.vartheta_offset[i] = half_tq2 * p.data.q0[i];
  }
  return out;
}

Field hat_R(const Problem& p, const TransientState& state) {
  const Field r_hat =
      hat_transform(state.acc_supply, state.acc_supply.last_sample(), p.delays);
  const double t = state.t;
  Field out(r_hat.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = r_hat[i] +
             p.material.a(i) * (t + p.delays.tau_q) * p.data.T0[i];
  return out;
}

double initial_energy_constant(const Problem& p) {
  const std::size_t n = p.geometry.n_nodes();
  const DelayPair& d = p.delays;
  Field w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double T_tilde0 = d.tau_T * p.data.T0[i];
    w[i] = p.material.a(i) * T_tilde0 * T_tilde0 +
           0.5 * d.tau_T * d.tau_q * d.tau_q * p.material.K(i) *
               p.data.q0[i] * p.data.q0[i];
  }
  return trapezoid(w, p.geometry.dx());
}

double data_bracket(const Problem& p, double S) {
  const TildeData tilde = make_tilde_data(p);
  Field w(tilde.phi.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = tilde.phi[i] * tilde.phi[i];
  const double phi_sq = trapezoid(w, p.geometry.dx());
  const double inv_Km = p.material.k_max();  // 1/K_m for scalar conductivity
  return 0.5 * S *
             (initial_energy_constant(p) + p.delays.tau_T * inv_Km * phi_sq) +
         0.25 * S * S * inv_Km * phi_sq;
}

double energy_E(const TransientState& state) {
  return 0.5 * state.acc_energy.level1()[0] + 0.5 * state.acc_energy.level2()[1];
}

double energy_F(const TransientState& state, const DelayPair& d) {
  return energy_E(state) +
         0.25 * d.tau_T * d.tau_q * d.tau_q * state.acc_energy.level1()[2];
}

double conservation_lhs(const TransientState& state, const DelayPair& d) {
  const Field& L1 = state.acc_energy.level1();
  const Field& L2 = state.acc_energy.level2();
  const Field& now = state.acc_energy.last_sample();
  return energy_E(state) + 0.5 * (d.tau_T + d.tau_q) * L1[1] +
         0.25 * d.tau_T * d.tau_q * d.tau_q * L1[2] +
         0.25 * d.tau_q * d.tau_q * now[1] + 0.5 * L2[1] +
         d.tau_q * (d.tau_T - 0.5 * d.tau_q) * L2[2];
}

double conservation_rhs(const TransientState& state, const DelayPair& d,
                        double initial_constant) {
  const Field& L1 = state.acc_energy.level1();
  const Field& L2 = state.acc_energy.level2();
  return 0.5 * state.t * initial_constant + L2[3] + L2[4] + d.tau_T * L1[4];
}

double conservation_residual(const TransientState& state, const Problem& p) {
  return conservation_lhs(state, p.delays) -
         conservation_rhs(state, p.delays, initial_energy_constant(p));
}

double stable_bound_value(double g_int, double bracket) {
  return g_int / std::sqrt(2.0) + std::sqrt(std::max(bracket, 0.0));
}

double growth_bound_value(double t, double weighted_g_int, double sigma_sq,
                          double bracket) {
  const double grow = std::exp(sigma_sq * t);
  return grow * weighted_g_int / std::sqrt(2.0) +
         grow * std::sqrt(std::max(bracket, 0.0));
}

EnergyObserver::EnergyObserver(const Problem& p, double t_end)
    : delays_(p.delays), initial_constant_(initial_energy_constant(p)) {
  if (!p.homogeneous_boundary())
    throw UnsupportedSettingError(
        "the dependence setting requires zero boundary data on both ends");
  if (!(t_end > 0.0) || !std::isfinite(t_end))
    throw ValidationError("energy observer needs a positive finite horizon");
  report_.regime = p.delays.regime();
  report_.sigma_sq = p.delays.has_sigma_sq()
                         ? p.delays.sigma_sq()
                         : std::numeric_limits<double>::quiet_NaN();
  report_.horizon = t_end;
  report_.bracket = data_bracket(p, t_end);
  report_.min_margin = std::numeric_limits<double>::infinity();
}

void EnergyObserver::on_sample(const TransientState& state) {
  const double E = energy_E(state);
  const double F = energy_F(state, delays_);
  const double lhs = conservation_lhs(state, delays_);
  const double rhs = conservation_rhs(state, delays_, initial_constant_);
  const double res = lhs - rhs;
  const double denom = std::max(std::abs(lhs), std::abs(rhs));
  const double rel = denom > kTiny ? std::abs(res) / denom : 0.0;
  // Startup gate for the aggregates: with fewer than eight trapezoid panels
  // behind them, the history integrals of signals that start at zero carry
  // O(1) relative startup error, and ratios of them certify nothing.  The
  // final sample is always aggregated so short runs still report something.
  const bool resolved = state.acc_energy.samples() > kStartupPanels ||
                        state.t >= report_.horizon * (1.0 - 1e-12);

  report_.times.push_back(state.t);
  report_.E.push_back(E);
  report_.F.push_back(F);
  report_.residual.push_back(res);
  report_.rel_residual.push_back(rel);
  report_.scale.push_back(denom);
  report_.g_cum.push_back(state.acc_g.level1()[0]);
  if (resolved)
    report_.max_rel_residual = std::max(report_.max_rel_residual, rel);

  if (report_.has_bound()) {
    double bound, functional;
    if (report_.regime == Regime::Growth) {
      bound = growth_bound_value(state.t, state.acc_g.level1()[1],
                                 report_.sigma_sq, report_.bracket);
      functional = F;
    } else {
      bound = stable_bound_value(state.acc_g.level1()[0], report_.bracket);
      functional = E;
    }
    report_.bound.push_back(bound);
    if (resolved) {
      const double margin = (bound - std::sqrt(std::max(functional, 0.0))) /
                            std::max(bound, kTiny);
      report_.min_margin = std::min(report_.min_margin, margin);
    }
  }
}

}  // namespace dpl
