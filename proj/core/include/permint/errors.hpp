#pragma once

#include <stdexcept>
#include <string>

namespace permint {

// Base class for every failure the library reports. Callers who do not care
// about the category can catch this one.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands defined over different ground sets (n or N mismatch).
struct DimensionError : Error {
  using Error::Error;
};

// A restriction pattern that is not a partial injection, or that conflicts
// with constraints already in force.
struct PatternError : Error {
  using Error::Error;
};

// Argument outside the mathematical domain of the operation.
struct DomainError : Error {
  using Error::Error;
};

// Request exceeds an enumeration cap (full S_n materialization, subset scans).
struct CapacityError : Error {
  using Error::Error;
};

// Non-finite values fed into a numeric routine.
struct NumericError : Error {
  using Error::Error;
};

// Invalid parameter combination (probabilities, budgets, sweep settings).
struct ParameterError : Error {
  using Error::Error;
};

// Malformed family file; message carries the line number.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace permint
