#pragma once

#include <stdexcept>
#include <string>

namespace foldloop {

// Non-Clifford gate handed to the stabilizer engine.
class UnsupportedGateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A syndrome that should be fixed by the code came out random or flipped.
class CodespaceViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Gate/architecture combination with no defined cost.
class UnsupportedCombination : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Port must be empty before an intra-loop interaction starts.
class PortOccupiedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed layout fixture or configuration text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace foldloop
