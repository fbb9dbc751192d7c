#include "dpl/material.hpp"

#include <algorithm>
#include <cmath>

#include "dpl/errors.hpp"

namespace dpl {

MaterialField::MaterialField(Field a, Field k)
    : a_(std::move(a)), k_(std::move(k)) {
  if (a_.empty() || a_.size() != k_.size())
    throw ValidationError("material fields a and k must be nonempty and equal-sized");
  for (double v : a_)
    if (!std::isfinite(v) || v <= 0.0)
      throw ValidationError("thermal capacity a must be finite and > 0");
  for (double v : k_)
    if (!std::isfinite(v) || v <= 0.0)
      throw ValidationError("conductivity k must be finite and > 0");
  const auto [a_lo, a_hi] = std::minmax_element(a_.begin(), a_.end());
  const auto [k_lo, k_hi] = std::minmax_element(k_.begin(), k_.end());
  a_min_ = *a_lo;
  a_max_ = *a_hi;
  k_min_ = *k_lo;
  k_max_ = *k_hi;
}

MaterialField MaterialField::uniform(std::size_t n_nodes, double a, double k) {
  return MaterialField(Field(n_nodes, a), Field(n_nodes, k));
}

}  // namespace dpl
