#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace perc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad dimensions, out-of-grid cells, violated preconditions.
class InputError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public InputError {
 public:
  using InputError::InputError;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : InputError("line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// The simulation hit its step budget before reaching a fixed point.
class TruncatedSimulation : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

// A construction needs a witness for a grid that nothing can supply.
class DependencyError : public ConstructionError {
 public:
  DependencyError(std::string missing, const std::string& what)
      : ConstructionError(what), missing_(std::move(missing)) {}

  const std::string& missing() const noexcept { return missing_; }

 private:
  std::string missing_;
};

}  // namespace perc
