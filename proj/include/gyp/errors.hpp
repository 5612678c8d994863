#pragma once

#include <stdexcept>
#include <string>

namespace gyp {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotNormalized : Error {
  double actual_mass;
  explicit NotNormalized(double mass)
      : Error("measure is not normalized, total mass " + std::to_string(mass)),
        actual_mass(mass) {}
};

struct NegativeDensity : Error {
  double location;
  explicit NegativeDensity(double x)
      : Error("density is negative at x = " + std::to_string(x)), location(x) {}
};

struct MismatchedReference : Error {
  MismatchedReference() : Error("measures do not share a reference measure") {}
};

struct CellOutsideSupport : Error {
  CellOutsideSupport() : Error("cell is not contained in the support") {}
};

struct InvalidPartition : Error {
  using Error::Error;
};

struct OrderOutOfRange : Error {
  double order;
  explicit OrderOutOfRange(double o, const std::string& why)
      : Error("order " + std::to_string(o) + " out of range: " + why), order(o) {}
};

struct QuadratureDidNotConverge : Error {
  int depth;
  explicit QuadratureDidNotConverge(int d)
      : Error("adaptive quadrature did not converge at depth " + std::to_string(d)),
        depth(d) {}
};

struct NonPositiveArgument : Error {
  NonPositiveArgument() : Error("argument must be positive") {}
};

struct DomainError : Error {
  using Error::Error;
};

struct InvalidSplit : Error {
  using Error::Error;
};

struct NoValidSplit : Error {
  NoValidSplit() : Error("cell admits no valid split") {}
};

struct LevelSetResolutionFailure : Error {
  LevelSetResolutionFailure() : Error("level-set root isolation did not converge") {}
};

struct InputError : Error {
  using Error::Error;
};

}  // namespace gyp
