#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace matchlab {

// Malformed problem data or an identifier the problem does not declare.
// Carries the 1-based source line when the problem came from a file.
class InvalidInstance : public std::runtime_error {
 public:
  explicit InvalidInstance(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// A call whose arguments break the operation's precondition.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A matching was expected to weakly dominate the DA outcome but does not.
class DominationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive search would exceed its configured size bound.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, double bound, double limit)
      : std::runtime_error(what), bound_(bound), limit_(limit) {}
  double bound() const noexcept { return bound_; }
  double limit() const noexcept { return limit_; }

 private:
  double bound_;
  double limit_;
};

// Internal consistency check failed; indicates a bug, not bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace matchlab
