#pragma once

#include <stdexcept>
#include <string>

namespace circulant {

// Three failure classes. The CLI maps them to exit codes 1, 2 and 3.

/// Bad user input: malformed multisets, invalid group actions, out-of-range sizes.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// N is a prime power, so no vanishing witness exists.
class PrimePowerInput : public InvalidInput {
 public:
  explicit PrimePowerInput(const std::string& what) : InvalidInput("PrimePowerInput: " + what) {}
};

/// A computation would exceed the configured term budget or enumeration limit.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Something that is a theorem turned out false at runtime. Always a bug.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NotRational : public ConsistencyError {
 public:
  explicit NotRational(const std::string& what) : ConsistencyError("NotRational: " + what) {}
};

class InexactDivision : public ConsistencyError {
 public:
  explicit InexactDivision(const std::string& what) : ConsistencyError("InexactDivision: " + what) {}
};

class WitnessFailure : public ConsistencyError {
 public:
  explicit WitnessFailure(const std::string& what) : ConsistencyError("WitnessFailure: " + what) {}
};

}  // namespace circulant
