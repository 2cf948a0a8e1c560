#pragma once

#include <stdexcept>
#include <string>

namespace confalg {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
  DivisionByZero() : Error("division by zero") {}
};

// Operands built over different ring specs or generator bases.
class SpecMismatch : public Error {
public:
  using Error::Error;
};

class NoCanonicalMap : public Error {
public:
  using Error::Error;
};

// Neither orientation of a generator pair is stored in the table.
class UndefinedProduct : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string &message, int line, int column)
      : Error(format(message, line, column)), line_(line), column_(column),
        message_(message) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string &bare_message() const { return message_; }

private:
  static std::string format(const std::string &m, int line, int column) {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + m;
  }

  int line_;
  int column_;
  std::string message_;
};

} // namespace confalg
