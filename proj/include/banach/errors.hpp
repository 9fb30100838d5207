#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace banach {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Vector length does not match the dimension of the space.
struct DimensionError : Error {
  using Error::Error;
};

/// Operation not defined for this space (e.g. a sphere parametrization in dim > 2).
struct UnsupportedSpaceError : Error {
  using Error::Error;
};

/// Input collapses the operation (zero vector passed to normalize, ...).
struct DegenerateInputError : Error {
  using Error::Error;
};

/// Parameter outside its mathematical domain.
struct DomainError : Error {
  using Error::Error;
};

/// Constraint set is empty for the requested bound.
struct InfeasibleError : Error {
  using Error::Error;
};

/// Malformed space id, option value or data file.
struct ParseError : Error {
  using Error::Error;
};

/// Objective returned a non-finite value during a search; carries the offending pair.
struct ObjectiveError : Error {
  ObjectiveError(const std::string& what, std::vector<double> x, std::vector<double> y)
      : Error(what), x(std::move(x)), y(std::move(y)) {}
  std::vector<double> x, y;
};

}  // namespace banach
