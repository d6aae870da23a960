#pragma once

#include <stdexcept>
#include <string>

namespace wkp {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside its domain: C=0, a digit >= C, a malformed
/// address literal, a graph above the size cap.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An operation was asked for (C, L, k) outside the regime it covers.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive search ran out of its check budget. `exhausted_below` is the
/// largest cardinality s such that every set of size <= s was checked and
/// none was a k-PDS, i.e. the search certified gamma > s.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, unsigned exhausted_below)
      : Error(what), exhausted_below_(exhausted_below) {}

  unsigned exhausted_below() const noexcept { return exhausted_below_; }

 private:
  unsigned exhausted_below_;
};

/// An internal invariant did not hold (a construction failed its own
/// verification, a Hamiltonian order broke adjacency, ...).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace wkp
