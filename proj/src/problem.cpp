#include "dpl/problem.hpp"

#include <cmath>

#include "dpl/errors.hpp"

namespace dpl {

BoundaryCondition BoundaryCondition::temperature(TimeFn f, TimeFn fdot) {
  return {BoundaryKind::Temperature, std::move(f), std::move(fdot), false};
}

BoundaryCondition BoundaryCondition::temperature_zero() {
  return {BoundaryKind::Temperature, zero_fn(), zero_fn(), true};
}

BoundaryCondition BoundaryCondition::flux(TimeFn f, TimeFn fdot) {
  return {BoundaryKind::NormalFlux, std::move(f), std::move(fdot), false};
}

BoundaryCondition BoundaryCondition::flux_zero() {
  return {BoundaryKind::NormalFlux, zero_fn(), zero_fn(), true};
}

namespace {

void check_field(const Field& f, std::size_t n, const char* what) {
  if (f.size() != n)
    throw ValidationError(std::string(what) + " must have one value per node");
  for (double v : f)
    if (!std::isfinite(v))
      throw ValidationError(std::string(what) + " contains a non-finite value");
}

}  // namespace

Problem::Problem(Geometry1D g, MaterialField m, DelayPair d, ProblemData pd,
                 BoundaryCondition l, BoundaryCondition r)
    : geometry(g),
      material(std::move(m)),
      delays(d),
      data(std::move(pd)),
      left(std::move(l)),
      right(std::move(r)) {
  if (material.n_nodes() != geometry.n_nodes())
    throw ValidationError("material grid does not match the geometry");
  const std::size_t n = geometry.n_nodes();
  check_field(data.T0, n, "initial temperature");
  check_field(data.q0, n, "initial flux");
  check_field(data.qdot0, n, "initial flux rate");
  if (!data.supply) throw ValidationError("supply callback must be set");
  if (!left.value || !right.value)
    throw ValidationError("boundary traces must be set");
  if (!left.rate) left.rate = BoundaryCondition::zero_fn();
  if (!right.rate) right.rate = BoundaryCondition::zero_fn();
}

}  // namespace dpl
