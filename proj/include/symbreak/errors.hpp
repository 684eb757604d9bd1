#pragma once

#include <stdexcept>
#include <string>

namespace symbreak {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input (rules, signatures, graphs).
class ParseError : public Error {
public:
  ParseError(int line, int column, const std::string& what)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

// Rule cannot be repaired into the normal form (e.g. singleton variables).
class NormalizeError : public Error {
public:
  using Error::Error;
};

// Input exceeds a configured search bound. Raised instead of guessing.
class CapError : public Error {
public:
  using Error::Error;
};

// An internal invariant failed. Always a bug, never a user error.
class SoundnessError : public Error {
public:
  using Error::Error;
};

}  // namespace symbreak
