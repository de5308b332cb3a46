#ifndef SABENCH_ERRORS_HPP
#define SABENCH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sabench {

/// Base class for all errors raised by this library.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input violates a documented precondition or type invariant.
class invalid_input_error : public error {
 public:
  using error::error;
};

/// A required optional input (e.g. posterior moments) is absent.
class missing_input_error : public error {
 public:
  using error::error;
};

/// A solve became numerically degenerate (singular or indefinite system,
/// nonfinite intermediate).
class numeric_degeneracy_error : public error {
 public:
  using error::error;
};

/// Requested configuration is outside what the estimator supports.
class unsupported_configuration_error : public error {
 public:
  using error::error;
};

/// An area has zero spread where a positive variability target was requested.
class degenerate_spread_error : public error {
 public:
  using error::error;
};

/// The MCMC produced a nonfinite draw or a rejection loop failed to accept.
class sampler_divergence_error : public error {
 public:
  using error::error;
};

/// Too few retained draws to form the requested summary.
class insufficient_sample_error : public error {
 public:
  using error::error;
};

/// A file could not be parsed; the message names the offending line.
class parse_error : public error {
 public:
  using error::error;
};

}  // namespace sabench

#endif
