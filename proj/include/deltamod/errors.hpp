#pragma once

#include <stdexcept>
#include <string>

namespace deltamod {

// Shape mismatch: non-square input to det, unequal vector lengths, ...
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The operation needs rank >= 1 (or a nonsingular block) and did not get it.
class DegenerateRankError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An argument is outside the operation's domain (Δ < 1, r < m+1, bad partition, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed matrix / partition / multiset text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Entry exceeds the configured magnitude bound while arbitrary precision is off.
class MagnitudeError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace deltamod
