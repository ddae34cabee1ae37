#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace revzeta {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Shape mismatch between operands; the message names both shapes.
class DimensionError : public Error {
  using Error::Error;
};

/// A system failed an invariant; the message names the first violated cell.
class ValidationError : public Error {
  using Error::Error;
};

/// An enumeration hit its work cap. Loud failure, never a wrong number.
class BudgetError : public Error {
  using Error::Error;
};

/// A mathematically impossible intermediate value, e.g. a negative
/// inclusion-exclusion total. Signals a construction bug, not bad input.
class ConsistencyError : public Error {
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::vector<std::string> violations)
      : Error(what), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Work cap shared by the enumeration-based oracles.
class WorkBudget {
 public:
  static constexpr std::uint64_t kDefaultLimit = 10'000'000;

  explicit WorkBudget(std::uint64_t limit = kDefaultLimit) : limit_(limit) {}

  void charge(std::uint64_t units = 1) {
    used_ += units;
    if (used_ > limit_)
      throw BudgetError("work budget exceeded: used " + std::to_string(used_) +
                        " of " + std::to_string(limit_));
  }

  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t used_ = 0;
  std::uint64_t limit_;
};

}  // namespace revzeta
