#pragma once

#include <stdexcept>
#include <string>

namespace frechet {

/// Thrown when an algorithm's edge-length hypothesis does not hold for the
/// given inputs. Callers can distinguish this from a "No" verdict.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// Thrown when an internal guarantee that the caller was supposed to
/// establish turns out to be violated (e.g. a prefix that must exist is
/// missing). Signals caller misuse, not an input property.
class AssumptionViolation : public std::logic_error {
 public:
  explicit AssumptionViolation(const std::string& what)
      : std::logic_error(what) {}
};

/// Curve file parse failure; the message carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " at line " + std::to_string(line)),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace frechet
