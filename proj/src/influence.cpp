#include "dpl/influence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dpl/errors.hpp"

namespace dpl {

double speed_bound_stable(const MaterialField& m, const DelayPair& d) {
  if (!(d.tau_q > 0.0) || d.tau_q > 2.0 * d.tau_T)
    throw RegimeError("stable speed bound requires 0 < tau_q <= 2 tau_T");
  return std::sqrt(m.k_max() / m.a_min()) *
         std::sqrt(2.0 * d.tau_T / (d.tau_q * d.tau_q) +
                   1.0 / (d.tau_T + d.tau_q));
}

double speed_bound_growth(const MaterialField& m, const DelayPair& d) {
  if (!(d.tau_T > 0.0) || 2.0 * d.tau_T >= d.tau_q)
    throw RegimeError("growth speed bound requires 0 < 2 tau_T < tau_q");
  const double tq = d.tau_q, tT = d.tau_T;
  const double num = 5.0 * tq * tq + 2.0 * tT * tT - 6.0 * tq * tT;
  const double den = tT * tT + 2.0 * tq * tq - 3.0 * tT * tq;
  // den = (tau_q - tau_T)(2 tau_q - tau_T) > 0 throughout this regime; the
  // guard only fires on out-of-domain inputs slipping past the check above.
  if (!(den > 0.0))
    throw ValidationError("speed-bound denominator is not positive");
  return std::sqrt(d.tau_T * m.k_max() / m.a_min()) * std::sqrt(num / den) /
         d.tau_q;
}

double speed_bound(const MaterialField& m, const DelayPair& d) {
  switch (d.regime()) {
    case Regime::Stable:
      return speed_bound_stable(m, d);
    case Regime::Growth:
      return speed_bound_growth(m, d);
    default:
      throw RegimeError(
          "no propagation-speed bound is available for tau_T = 0");
  }
}

namespace {

double pair_max_abs(const Snapshot& s, std::size_t i) {
  return std::max(std::abs(s.T[i]), std::abs(s.q[i]));
}

}  // namespace

FrontRecord track_front(const std::vector<Snapshot>& samples,
                        const Problem& problem, double rel_threshold,
                        double confine_tol) {
  if (samples.empty())
    throw ValidationError("front tracking needs at least the initial sample");
  if (!(rel_threshold > 0.0) || !(confine_tol > 0.0))
    throw ValidationError("front thresholds must be positive");

  const Geometry1D& g = problem.geometry;
  const std::size_t n = g.n_nodes();
  const double dx = g.dx();

  FrontRecord rec;
  rec.regime = problem.delays.regime();
  rec.c_bound = speed_bound(problem.material, problem.delays);
  rec.c_char = characteristic_speed(problem.material, problem.delays);

  const Snapshot& initial = samples.front();
  for (std::size_t i = 0; i < n; ++i)
    rec.peak0 = std::max(rec.peak0, pair_max_abs(initial, i));
  rec.threshold_abs = rel_threshold * rec.peak0;
  const double peak_guard = std::max(rec.peak0, 1e-300);

  for (std::size_t i = 0; i < n; ++i)
    if (g.x(i) > 0.0 && pair_max_abs(initial, i) > rec.threshold_abs)
      throw ValidationError(
          "initial data must be supported in [-h, 0] at the front threshold");

  for (const Snapshot& s : samples) {
    double front = -g.h;
    for (std::size_t i = n; i-- > 0;) {
      if (pair_max_abs(s, i) > rec.threshold_abs) {
        front = g.x(i);
        break;
      }
    }
    const double cone = rec.c_bound * s.t;
    for (std::size_t i = 0; i < n; ++i)
      if (g.x(i) > cone)
        rec.worst_excess =
            std::max(rec.worst_excess, pair_max_abs(s, i) / peak_guard);

    rec.times.push_back(s.t);
    rec.front_position.push_back(front);
    rec.cone_position.push_back(std::min(cone, g.L));
    if (front >= g.L - 2.0 * dx) rec.truncated = true;
  }

  rec.confined = rec.worst_excess <= confine_tol;

  // Least-squares slope over the window where the front has detached from
  // its initial position but not yet approached the right boundary.
  const double front0 = rec.front_position.front();
  double st = 0, sx = 0, stt = 0, stx = 0;
  std::size_t m = 0;
  for (std::size_t j = 0; j < rec.times.size(); ++j) {
    const double x = rec.front_position[j];
    if (x > front0 + 2.0 * dx && x < g.L - 5.0 * dx) {
      st += rec.times[j];
      sx += x;
      stt += rec.times[j] * rec.times[j];
      stx += rec.times[j] * x;
      ++m;
    }
  }
  const double det = m * stt - st * st;
  rec.c_empirical = (m >= 2 && det > 0.0)
                        ? (m * stx - st * sx) / det
                        : std::numeric_limits<double>::quiet_NaN();
  return rec;
}

}  // namespace dpl
