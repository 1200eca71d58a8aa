#pragma once

#include <stdexcept>
#include <string>

namespace assumekit {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (game files, DIMACS, word literals).
/// Carries the 1-based line and column when the position is known,
/// and the JSON field path when the error concerns a specific field.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0,
             std::string field = {})
      : Error(format(what, line, column, field)),
        line_(line),
        column_(column),
        field_(std::move(field)) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& field() const { return field_; }

 private:
  static std::string format(const std::string& what, int line, int column,
                            const std::string& field) {
    std::string out;
    if (line > 0) {
      out += "line " + std::to_string(line);
      if (column > 0) out += ", column " + std::to_string(column);
      out += ": ";
    }
    if (!field.empty()) out += field + ": ";
    return out + what;
  }

  int line_;
  int column_;
  std::string field_;
};

/// A well-formed structure that violates a type invariant
/// (dead end, dangling edge, bad distribution, alternation, ...).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what, std::string field = {})
      : Error(field.empty() ? what : field + ": " + what),
        field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Caller passed arguments outside an operation's precondition
/// (unknown state, edge that is not a player-2 edge, partial strategy, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive oracle was asked to run above its size guard.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// A result failed its post-hoc re-verification. Always a bug.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace assumekit
