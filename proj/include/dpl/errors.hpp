#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dpl {

/// Base class for all failures raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input data, geometry, or configuration values.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Model evaluated outside its admissible delay-time range
/// (tau_q = 0 in the transient state-space form, tau_T = 0 likewise).
class DegenerateModelError : public Error {
 public:
  using Error::Error;
};

/// An operation that is only defined in one delay regime was called in another.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// Integral accumulator queried with a sample it has not been fed.
class SynchronizationError : public Error {
 public:
  using Error::Error;
};

/// Requested setting is outside what the analysis supports
/// (e.g. energy functionals with nonzero boundary data).
class UnsupportedSettingError : public Error {
 public:
  using Error::Error;
};

/// Time marching produced a non-finite field value.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t step)
      : Error(what), step_index(step) {}
  std::size_t step_index;
};

/// Steady solve could not factor or did not reach the residual target.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

/// Frequency at or above the critical value where no decay rate exists.
class FrequencyDomainError : public Error {
 public:
  using Error::Error;
};

/// Config file could not be parsed; carries the offending line.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line_number)
      : Error(line_number > 0
                  ? what + " (line " + std::to_string(line_number) + ")"
                  : what),
        line(line_number) {}
  int line;
};

}  // namespace dpl
