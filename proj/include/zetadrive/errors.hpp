#pragma once

#include <stdexcept>
#include <string>

namespace zetadrive {

/// Argument outside the validated range of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller misuse: malformed grids, mismatched lengths, bad configuration.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical invariant (unitarity, normalization, ...) was violated.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A statistical estimate could not be formed (e.g. every bootstrap draw
/// was rootless).
class EstimationError : public std::runtime_error {
 public:
  EstimationError(const std::string& what, int draws, int retained)
      : std::runtime_error(what), draws_(draws), retained_(retained) {}

  int draws() const noexcept { return draws_; }
  int retained() const noexcept { return retained_; }

 private:
  int draws_;
  int retained_;
};

}  // namespace zetadrive
