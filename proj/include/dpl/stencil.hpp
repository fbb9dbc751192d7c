#pragma once

#include "dpl/grid.hpp"

namespace dpl {

/// Second-order spatial derivative on a uniform grid: central differences at
/// interior nodes, one-sided three-point stencils at the two ends.
void gradient_into(const Field& f, double dx, Field& out);
Field gradient(const Field& f, double dx);

/// Composite trapezoid quadrature of nodal values over a uniform grid.
double trapezoid(const Field& f, double dx);

}  // namespace dpl
