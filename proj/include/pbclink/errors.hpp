#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace pbclink {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input to a geometric type (non-finite coordinate, repeated vertex, ...).
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Two segments closer than the contact tolerance; the Gauss integrand is singular there.
class ContactError : public Error {
 public:
  explicit ContactError(const std::string& what,
                        std::optional<std::pair<std::size_t, std::size_t>> segments = std::nullopt)
      : Error(what), segments_(segments) {}

  /// Offending (segment of first curve, segment of second curve), when known.
  const std::optional<std::pair<std::size_t, std::size_t>>& segments() const { return segments_; }

 private:
  std::optional<std::pair<std::size_t, std::size_t>> segments_;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class DegenerateClosure : public Error {
 public:
  using Error::Error;
};

class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

class NonCompactChain : public Error {
 public:
  using Error::Error;
};

/// Truncated periodic sum did not converge within the shell budget.
class NotConverged : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class MismatchedFrames : public Error {
 public:
  using Error::Error;
};

class GenerationBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Wrapped coordinates whose bonds cannot be reconstructed unambiguously.
class ConventionError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pbclink
