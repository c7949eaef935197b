// SPDX-License-Identifier: Apache-2.0

#ifndef CUTTERS_ERRORS_HPP
#define CUTTERS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cutters {

/// A caller broke a contract: bad argument, wrong dimension, parameter out of
/// its admissible range.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input text does not conform to the problem file format. Messages carry the
/// 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Structurally well-formed data that violates a semantic requirement
/// (zero normal row, infeasible witness, empty constraint list, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem trouble while loading or saving a problem.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cutters

#endif
