#pragma once

#include <stdexcept>
#include <string>

namespace syndromest {

// Enumeration request would exceed the configured budget. Carries a size
// estimate so callers can report what was refused.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, double estimated_size)
      : std::runtime_error(what + " (estimated size " + std::to_string(estimated_size) + ")"),
        estimated_size_(estimated_size) {}
  double estimated_size() const { return estimated_size_; }

 private:
  double estimated_size_;
};

// A syndrome has probability zero under the current model. The offending
// syndrome is kept in printable form.
class ZeroSupportError : public std::runtime_error {
 public:
  explicit ZeroSupportError(const std::string& syndrome_bits)
      : std::runtime_error("syndrome has zero probability under the model: " + syndrome_bits),
        syndrome_(syndrome_bits) {}
  const std::string& syndrome() const { return syndrome_; }

 private:
  std::string syndrome_;
};

// Operation requires a structural property the object does not have
// (e.g. a perfect code, or logical operators).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IllConditionedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InconsistentMomentsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact integer identity failed to hold during a computation that is
// supposed to be exact. Indicates a bug or an invalid input object.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace syndromest
