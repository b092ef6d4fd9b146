#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nhifs {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point or box lies outside the domain of a set or a map.
class DomainViolation : public Error {
 public:
  using Error::Error;
};

/// Two grid sets do not share domain and resolution.
class IncompatibleGrid : public Error {
 public:
  using Error::Error;
};

/// An operation would have produced the empty set.
class EmptySet : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A family passed as nested is not decreasing at `step()`.
class NotNested : public Error {
 public:
  NotNested(std::size_t step, const std::string& what)
      : Error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class StreamExhausted : public Error {
 public:
  using Error::Error;
};

/// No weakly hyperbolic prefix was certified within the budget.
class NoCertificate : public Error {
 public:
  using Error::Error;
};

/// A required hypothesis could not be witnessed and no override was given.
class HypothesisUnmet : public Error {
 public:
  using Error::Error;
};

class UnknownExample : public Error {
 public:
  using Error::Error;
};

/// Config parse error. `line()` is 1-based, 0 for semantic errors.
class ConfigError : public Error {
 public:
  ConfigError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace nhifs
