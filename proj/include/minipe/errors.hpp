#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace minipe {

// Base of every error a malformed input can raise (parse, validation,
// machine description). Runtime failures of object programs are not
// exceptions at the public surface; see EvalOutcome.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class DuplicateBindingError : public Error {
 public:
  explicit DuplicateBindingError(const std::string& name)
      : Error("duplicate binding for '" + name + "'"), name_(name) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class InvalidMachineError : public Error {
 public:
  using Error::Error;
};

}  // namespace minipe
