#pragma once

#include <stdexcept>
#include <string>

namespace causorbit {

/// Malformed input text: a CSV row, a cell, an edge-list line, a DOT line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a data invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Out-of-range configuration value (threshold, margin, size caps).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation's precondition on its arguments does not hold.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace causorbit
