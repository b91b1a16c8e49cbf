#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: table sizes disagree, empty ground set, bad JSON shape.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A value is outside the domain of an operation (not a member, not in the
/// algebra, not Hermitian, dimension mismatch).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Semigroup enumeration ran past its element budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::size_t discovered, std::size_t frontier)
      : Error(what), discovered_(discovered), frontier_(frontier) {}

  std::size_t discovered() const noexcept { return discovered_; }
  std::size_t frontier() const noexcept { return frontier_; }

 private:
  std::size_t discovered_;
  std::size_t frontier_;
};

/// Block decomposition could not separate eigenvalue clusters reliably.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

/// Operation is only defined for superposition-mode subsets.
class UnsupportedMode : public Error {
 public:
  using Error::Error;
};

}  // namespace ncg
