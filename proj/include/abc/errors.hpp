#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace abc {

// Invalid input to an operation (bad range, malformed rational, broken precondition).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Allocation or representability failure (table too large, values overflow the
// fixed-width enumeration types).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration would exceed the configured candidate budget. Carries the
// estimated number of candidate evaluations so callers can report it.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, long double estimate, std::uint64_t budget)
      : std::runtime_error(what), estimate_(estimate), budget_(budget) {}

  long double estimate() const noexcept { return estimate_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  long double estimate_;
  std::uint64_t budget_;
};

}  // namespace abc
