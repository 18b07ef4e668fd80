#pragma once

#include <stdexcept>
#include <string>

namespace sectorial {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or non-conforming input (dimension mismatch, bad tolerance, NaN entries).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Input is well formed but outside the mathematical domain of the operation
/// (e.g. a non-accretive matrix handed to a fractional power).
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// An iterative method stopped without meeting its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// A catalog bound was asked for on inputs that do not satisfy its hypotheses.
class ApplicabilityError : public Error {
 public:
  ApplicabilityError(std::string predicate, const std::string& detail)
      : Error("inapplicable: predicate '" + predicate + "' failed: " + detail),
        predicate_(std::move(predicate)) {}
  const std::string& predicate() const noexcept { return predicate_; }

 private:
  std::string predicate_;
};

/// Text input could not be parsed; carries the offending location.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace sectorial
