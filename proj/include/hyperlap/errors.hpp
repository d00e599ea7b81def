#pragma once

#include <stdexcept>
#include <string>

namespace hyperlap {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated: kind mismatch, out-of-range id, malformed structure.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A geometric operation hit a point where it is undefined (antipodal sphere
/// points, zero distance raised to a negative power).
class SingularityError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Document could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Document parsed but violates a structural invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Rethrows the in-flight exception with `context` prepended to its message,
/// preserving the library error type. Call only from inside a catch block.
[[noreturn]] void rethrow_with_context(const std::string& context);

}  // namespace hyperlap
