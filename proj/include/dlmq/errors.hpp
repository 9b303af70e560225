#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dlmq {

/// A caller broke an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Input too close to zero to be normalized.
class DegenerateInputError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Circuit text rejected by the parser; `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// The measured period cannot produce nontrivial factors.
class PeriodUnusableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dlmq
