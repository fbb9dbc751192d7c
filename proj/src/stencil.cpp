#include "dpl/stencil.hpp"

#include "dpl/errors.hpp"

namespace dpl {

void gradient_into(const Field& f, double dx, Field& out) {
  const std::size_t n = f.size();
  if (n < 3) throw ValidationError("gradient stencil needs at least 3 nodes");
  out.resize(n);
  const double inv2 = 1.0 / (2.0 * dx);
  out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2;
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv2;
  out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2;
}

Field gradient(const Field& f, double dx) {
  Field out;
  gradient_into(f, dx, out);
  return out;
}

double trapezoid(const Field& f, double dx) {
  if (f.size() < 2) return 0.0;
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * dx;
}

}  // namespace dpl
