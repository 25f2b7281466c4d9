#pragma once

#include <stdexcept>
#include <string>

namespace hallie {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad quiver document, unsupported field size, bad flags.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A computation needed an indecomposable (or object) outside the registry bound.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed a configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An internal identity that must hold exactly failed (e.g. an inexact division).
/// Always signals a bug in an enumeration, never bad input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

inline void check_consistency(bool ok, const std::string& what) {
  if (!ok) throw ConsistencyError("internal consistency violated: " + what);
}

}  // namespace hallie
