#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace elimkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the program/formula parser. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Name resolution and definition errors (duplicates, arity, unknown names).
class DefinitionError : public Error {
 public:
  using Error::Error;
};

/// An operation received a formula outside its precondition, e.g. a
/// second-order operator where an operator-free formula is required.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Signature larger than the configured enumeration bound.
class BoundError : public Error {
 public:
  using Error::Error;
};

/// Step limit or macro depth exceeded during elimination.
class LimitError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read.
class InputError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace elimkit
