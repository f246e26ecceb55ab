#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace protower {

/// Raised when data handed to a constructor violates a structural invariant.
/// `witness` names the offending entry (a product, a level, a basis index).
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, std::string witness = {})
      : std::runtime_error(witness.empty() ? what : what + " (" + witness + ")"),
        witness_(std::move(witness)) {}

  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

/// Raised when an operation's precondition on its inputs does not hold.
/// `level` is the tower level where the hypothesis fails, 0 if none applies.
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what, std::size_t level = 0)
      : std::runtime_error(what), level_(level) {}

  std::size_t level() const { return level_; }

 private:
  std::size_t level_;
};

}  // namespace protower
