#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace obl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Table fails its convexity/validity invariants.
struct InvalidTableError : Error {
  using Error::Error;
};

/// Query point outside the operation's domain (e.g. inside the table).
struct DomainError : Error {
  using Error::Error;
};

/// The outer map is undefined: the support line contains a straight piece.
struct SingularLineError : Error {
  using Error::Error;
};

/// Polygon has three consecutive collinear vertices where that is not allowed.
struct DegeneracyError : Error {
  using Error::Error;
};

/// A horizontal path left the nondegenerate set during integration.
struct PathDegenerationError : Error {
  PathDegenerationError(const std::string& msg, double t) : Error(msg), time(t) {}
  double time;
};

/// Iterative solver failed to reach its tolerance.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& msg, std::vector<double> hist = {})
      : Error(msg), residual_history(std::move(hist)) {}
  std::vector<double> residual_history;
};

struct PreconditionError : Error {
  using Error::Error;
};

/// Equivariant curve violates its orientation invariant.
struct InvalidCurveError : Error {
  using Error::Error;
};

}  // namespace obl
