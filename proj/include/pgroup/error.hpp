#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pgroup {

/// Syntax or semantic error in presentation or corpus source text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A presentation that is malformed as data (bad prime, unweighted rule, ...).
class PresentationError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Enumeration or table size exceeds the configured cap.
class CapExceeded : public std::length_error {
  using std::length_error::length_error;
};

/// Collection ran past its step budget.
class BudgetExceeded : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its precondition (e.g. a non-powerful group
/// passed to a routine that requires one).
class PreconditionError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A computed object contradicts a proven theorem. By construction this means
/// an implementation bug, so it is never turned into an ordinary false verdict.
class TheoremViolation : public std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace pgroup
