#pragma once

#include <stdexcept>
#include <string>

namespace cusp {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different variable lists or charts.
class ContextMismatch : public Error {
public:
  using Error::Error;
};

/// A series expected to be a unit has zero constant term.
class NotAUnit : public Error {
public:
  using Error::Error;
};

/// A square root was requested that does not exist in Q(i).
class NoExactRoot : public Error {
public:
  using Error::Error;
};

/// Exact division by a monomial failed.
class NotDivisible : public Error {
public:
  NotDivisible(const std::string& what, std::string offending)
      : Error(what), offending_(std::move(offending)) {}
  const std::string& offending() const { return offending_; }

private:
  std::string offending_;
};

/// An operation was called outside its contract (bad degree, bad axis, ...).
class ContractViolation : public Error {
public:
  using Error::Error;
};

/// Syntax error in polynomial/series text, with 1-based position.
class ParseError : public Error {
public:
  ParseError(const std::string& message, int line, int column)
      : Error(message + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

}  // namespace cusp
