#pragma once

#include <stdexcept>
#include <string>

namespace qtime {

// Base for every error raised by the library. The CLI maps the subclasses
// onto exit codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied value violates an operation's precondition
// (zero flux, degenerate energy, node point, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A truncation guard tripped: an "infinite" integral was cut off where the
// integrand had not yet decayed (time window, spatial window, spectral edges).
class NumericalGuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace qtime
