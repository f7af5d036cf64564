#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jacwb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a Groebner computation exceeds its pair budget or an
/// iterative ideal operation exceeds its iteration cap.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class RingMismatch : public Error {
 public:
  RingMismatch() : Error("operands live in different rings") {}
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class UncertifiedDecomposition : public Error {
 public:
  using Error::Error;
};

class LocusUnavailable : public Error {
 public:
  using Error::Error;
};

class ConstructionInapplicable : public Error {
 public:
  using Error::Error;
};

class IsoVerificationFailed : public Error {
 public:
  using Error::Error;
};

/// Positioned parse error. Line and column are 1-based; line is 0 when the
/// input was a single expression rather than a file.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(format(line, column, message)), line_(line), column_(column), message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  static std::string format(std::size_t line, std::size_t column, const std::string& message) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ", ";
    out += "column " + std::to_string(column) + ": " + message;
    return out;
  }

  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

}  // namespace jacwb
