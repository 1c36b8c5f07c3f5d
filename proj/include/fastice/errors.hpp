#pragma once

#include <stdexcept>
#include <string>

#include "fastice/types.hpp"

namespace fastice {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid scenario or parameter value, detected before any work is done.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class OutOfDomainError : public Error {
 public:
  explicit OutOfDomainError(const Vec2& p);
  const Vec2& point() const { return point_; }

 private:
  Vec2 point_;
};

/// A NaN or infinity was found in an input field.
class PoisonedStateError : public Error {
 public:
  explicit PoisonedStateError(std::string field);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Advective CFL limit exceeded on some face.
class CflError : public Error {
 public:
  CflError(const std::string& face, double cfl, double suggested_dt);
  double cfl() const { return cfl_; }
  double suggested_dt() const { return suggested_dt_; }

 private:
  double cfl_;
  double suggested_dt_;
};

/// An internal invariant was broken (e.g. a tracer went negative).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// The nonlinear momentum solve did not converge.
class SolverError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fastice
