#pragma once

#include <stdexcept>
#include <string>

namespace chainpart {

/// Bad arguments or an empty domain (exit status 1 at the command line).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration ceiling or memory budget would be exceeded.
class ResourceLimit : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A proved identity or internal consistency check failed (exit status 2).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace chainpart
