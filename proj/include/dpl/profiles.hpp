#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dpl/grid.hpp"

namespace dpl {

/// Named analytic spatial profile, the field vocabulary of run configs:
///   zero | const(c) | gaussian(center,width,amp) | step(a,b,amp) | sine(amp)
/// sine(amp) is the first clamped mode of the interval it is bound to,
/// amp*sin(pi*(x - lo)/(hi - lo)).
class Profile {
 public:
  Profile() : name_("zero"), fn_([](double) { return 0.0; }) {}

  static Profile zero() { return Profile(); }
  static Profile constant(double c);
  static Profile gaussian(double center, double width, double amp);
  static Profile step(double a, double b, double amp);
  static Profile sine(double amp, double lo, double hi);

  /// Parses the config spelling; lo/hi are the interval the profile will be
  /// sampled on (needed by sine). Throws ValidationError on bad syntax.
  static Profile parse(const std::string& text, double lo, double hi);

  double operator()(double x) const { return fn_(x); }
  const std::string& name() const { return name_; }

  Field sample(const std::vector<double>& xs) const {
    Field f(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) f[i] = fn_(xs[i]);
    return f;
  }

 private:
  Profile(std::string name, std::function<double(double)> fn)
      : name_(std::move(name)), fn_(std::move(fn)) {}

  std::string name_;
  std::function<double(double)> fn_;
};

}  // namespace dpl
