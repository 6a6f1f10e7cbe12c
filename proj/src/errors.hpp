#ifndef ALTFP_ERRORS_HPP_
#define ALTFP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace altfp {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An argument is out of range or inconsistent (lambda outside [0,1],
// dimension mismatch, exhausted schedule, ...).
struct ParamError : Error {
  using Error::Error;
};

// A point is not a valid element of the space or lies outside the
// configured convex domain.
struct DomainError : Error {
  using Error::Error;
};

// Config document is malformed or fails validation.
struct ConfigError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace altfp

#endif  // ALTFP_ERRORS_HPP_
