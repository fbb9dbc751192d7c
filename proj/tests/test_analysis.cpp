#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dpl/analysis.hpp"
#include "dpl/errors.hpp"
#include "dpl/transient.hpp"
#include "helpers.hpp"

using namespace dpl;
using dpl::testing::make_rod;

namespace {

Problem flat_data_rod(const DelayPair& d) {
  // T0 = 1 and q0 = 1 on [-1, 1] with unit material: every integral in the
  // data constants is a trapezoid of a constant, hence exact.
  Geometry1D geom(1.0, 1.0, 32);
  ProblemData data;
  data.T0 = Field(geom.n_nodes(), 1.0);
  data.q0 = Field(geom.n_nodes(), 1.0);
  data.qdot0 = Field(geom.n_nodes(), 0.0);
  return Problem(geom, MaterialField::uniform(geom.n_nodes(), 1, 1), d,
                 std::move(data), BoundaryCondition::temperature_zero(),
                 BoundaryCondition::temperature_zero());
}

}  // namespace

TEST_CASE("data constants against hand-computed integrals") {
  const DelayPair d(1.0, 0.5);
  const Problem p = flat_data_rod(d);

  // int a (tau_T T0)^2 + (tau_T tau_q^2/2) int K q0 q0
  //   = 0.25 * 2 + 0.25 * 2 = 1.
  CHECK(initial_energy_constant(p) == doctest::Approx(1.0).epsilon(1e-15));

  // phi = K tau_q q0 = 1, so int phi^2 = 2 and
  // bracket(S) = (S/2)(1 + 0.5*2) + (S^2/4)*2 = S + S^2/2.
  CHECK(data_bracket(p, 2.0) == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(data_bracket(p, 1.0) == doctest::Approx(1.5).epsilon(1e-13));
}

TEST_CASE("bound evaluators pin the closed forms") {
  CHECK(stable_bound_value(3.0, 4.0) ==
        doctest::Approx(3.0 / std::sqrt(2.0) + 2.0).epsilon(1e-15));
  // exp(s^2 t) multiplies both the weighted integral and the data term.
  const double s2 = 0.75, t = 2.0;
  CHECK(growth_bound_value(t, 1.0, s2, 4.0) ==
        doctest::Approx(std::exp(1.5) * (1.0 / std::sqrt(2.0) + 2.0))
            .epsilon(1e-14));
}

TEST_CASE("zero data gives identically zero functionals and residual") {
  TransientSolver solver(make_rod(1.0, 1.0, 32, DelayPair(1.0, 1.0)));
  EnergyObserver obs(solver.problem(), 0.5);
  solver.run(
      [] {
        StepControl c;
        c.t_end = 0.5;
        return c;
      }(),
      {&obs});
  const EnergyReport& rep = obs.report();
  for (double e : rep.E) CHECK(e == 0.0);
  for (double f : rep.F) CHECK(f == 0.0);
  for (double r : rep.residual) CHECK(r == 0.0);
  CHECK(rep.max_rel_residual == 0.0);
  CHECK(rep.min_margin >= 0.0);
}

TEST_CASE("energy functionals are nonnegative, ordered and nondecreasing") {
  const DelayPair d(0.8, 0.6);
  TransientSolver solver(make_rod(1.0, 1.0, 64, d, "gaussian(0,0.15,1)"));
  EnergyObserver obs(solver.problem(), 1.0);
  StepControl ctl;
  ctl.t_end = 1.0;
  solver.run(ctl, {&obs});
  const EnergyReport& rep = obs.report();
  REQUIRE(rep.E.size() > 10);
  for (std::size_t i = 0; i < rep.E.size(); ++i) {
    CHECK(rep.E[i] >= 0.0);
    CHECK(rep.F[i] >= rep.E[i]);
    if (i) CHECK(rep.E[i] >= rep.E[i - 1] - 1e-14);
  }
}

TEST_CASE("balance residual starts at zero and stays relatively small") {
  const DelayPair d(1.0, 1.0);
  TransientSolver solver(make_rod(1.0, 1.0, 128, d, "gaussian(0,0.15,1)"));
  EnergyObserver obs(solver.problem(), 0.5);
  StepControl ctl;
  ctl.t_end = 0.5;
  solver.run(ctl, {&obs});
  const EnergyReport& rep = obs.report();
  CHECK(rep.residual.front() == 0.0);
  CHECK(rep.max_rel_residual < 1e-3);
}

TEST_CASE("balance residual shrinks under simultaneous refinement") {
  const DelayPair d(1.0, 1.0);
  auto residual_at = [&](std::size_t cells, double dt) {
    TransientSolver solver(
        make_rod(1.0, 1.0, cells, d, "gaussian(0,0.15,1)"));
    EnergyObserver obs(solver.problem(), 0.5);
    StepControl ctl;
    ctl.t_end = 0.5;
    ctl.dt = dt;
    solver.run(ctl, {&obs});
    return obs.report().max_rel_residual;
  };
  const double dt0 = 0.01;
  const double coarse = residual_at(64, dt0);
  const double fine = residual_at(128, dt0 / 2);
  CHECK(coarse / fine > 2.5);
  CHECK(coarse / fine < 6.5);
}

TEST_CASE("dependence bound certified in both regimes") {
  auto min_margin = [&](const DelayPair& d) {
    TransientSolver solver(make_rod(1.0, 1.0, 96, d, "gaussian(0,0.15,1)"));
    EnergyObserver obs(solver.problem(), 0.75);
    StepControl ctl;
    ctl.t_end = 0.75;
    solver.run(ctl, {&obs});
    return obs.report();
  };
  const EnergyReport stable = min_margin(DelayPair(1.0, 1.0));
  CHECK(stable.regime == Regime::Stable);
  CHECK(stable.min_margin >= -1e-8);

  const EnergyReport growth = min_margin(DelayPair(0.5, 0.1));
  CHECK(growth.regime == Regime::Growth);
  CHECK(growth.sigma_sq == 6.0);  // 1/0.1 - 2/0.5, exactly representable
  CHECK(growth.min_margin >= -1e-8);

  const EnergyReport boundary = min_margin(DelayPair(1.0, 0.5));
  CHECK(boundary.regime == Regime::Stable);
  CHECK(boundary.sigma_sq == 0.0);
  CHECK(boundary.min_margin >= -1e-8);
}

TEST_CASE("energy analysis requires homogeneous boundary traces") {
  Geometry1D geom(1.0, 1.0, 32);
  ProblemData data;
  data.T0 = Field(geom.n_nodes(), 0.0);
  data.q0 = Field(geom.n_nodes(), 0.0);
  data.qdot0 = Field(geom.n_nodes(), 0.0);
  Problem p(geom, MaterialField::uniform(geom.n_nodes(), 1, 1),
            DelayPair(1, 1), std::move(data),
            BoundaryCondition::temperature([](double t) { return t; }),
            BoundaryCondition::temperature_zero());
  CHECK_THROWS_AS(EnergyObserver(p, 1.0), UnsupportedSettingError);
}

TEST_CASE("supply enters the balance through the weighted history") {
  // A run driven purely by the heat supply still satisfies the identity.
  Geometry1D geom(1.0, 1.0, 64);
  ProblemData data;
  data.T0 = Field(geom.n_nodes(), 0.0);
  data.q0 = Field(geom.n_nodes(), 0.0);
  data.qdot0 = Field(geom.n_nodes(), 0.0);
  data.supply = [](double x, double t) {
    return std::exp(-x * x / 0.1) * std::cos(3.0 * t);
  };
  Problem p(geom, MaterialField::uniform(geom.n_nodes(), 1, 1),
            DelayPair(0.9, 0.7), std::move(data),
            BoundaryCondition::temperature_zero(),
            BoundaryCondition::temperature_zero());
  TransientSolver solver(std::move(p));
  EnergyObserver obs(solver.problem(), 0.6);
  StepControl ctl;
  ctl.t_end = 0.6;
  solver.run(ctl, {&obs});
  const EnergyReport& rep = obs.report();
  CHECK(rep.E.back() > 0.0);
  CHECK(rep.max_rel_residual < 1e-3);
  CHECK(rep.min_margin >= -1e-8);
}
