#pragma once

#include <stdexcept>
#include <string>

namespace hetero2st {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};
struct NonFiniteInput : Error {
  using Error::Error;
};
struct GraphTooSmall : Error {
  using Error::Error;
};
struct DisconnectedAfterExclusion : Error {
  using Error::Error;
};
struct SingleSample : Error {
  using Error::Error;
};
struct SingularCovariance : Error {
  using Error::Error;
};
struct EnumerationTooLarge : Error {
  using Error::Error;
};
struct InsufficientDraws : Error {
  using Error::Error;
};
struct TooFewPoints : Error {
  using Error::Error;
};
struct EmptyClusterUnrecoverable : Error {
  using Error::Error;
};
struct TooManyInfeasibleRounds : Error {
  using Error::Error;
};
struct InvalidSpec : Error {
  using Error::Error;
};
struct UnknownExperiment : Error {
  using Error::Error;
};
struct QuadratureNonconvergent : Error {
  using Error::Error;
};
struct EmptySelection : Error {
  using Error::Error;
};
struct NotPositiveDefinite : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

}  // namespace hetero2st
