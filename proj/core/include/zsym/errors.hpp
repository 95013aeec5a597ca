#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zsym {

/// Base class of everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Expression or metric-file syntax error, with a 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class UnknownSymbolError : public Error {
 public:
  explicit UnknownSymbolError(const std::string& name)
      : Error("unknown identifier '" + name + "'"), name_(name) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// Division by zero, sqrt of a negative number, fractional power of a
/// negative base, ... during numeric evaluation.
class SingularEvaluation : public Error {
 public:
  using Error::Error;
};

class DegenerateMetricError : public Error {
 public:
  using Error::Error;
};

/// Raised by the symbolic linear solver when a pivot's zero test is only
/// decidable numerically; carries the canonical form of the offending entry.
class UndecidablePivotError : public Error {
 public:
  explicit UndecidablePivotError(const std::string& pivot_text)
      : Error("undecidable pivot: " + pivot_text), pivot_text_(pivot_text) {}

  const std::string& pivot_text() const { return pivot_text_; }

 private:
  std::string pivot_text_;
};

}  // namespace zsym
