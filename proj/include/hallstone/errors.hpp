#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hallstone {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Closure or lattice enumeration hit a configured cap.
class TooLargeError : public Error {
public:
  using Error::Error;
};

// An element was used outside the group that is supposed to contain it.
class MembershipError : public Error {
public:
  using Error::Error;
};

class NotNormalError : public Error {
public:
  using Error::Error;
};

// A complement basis or Sylow basis failed to generate a Hall system.
class SystemGenerationError : public Error {
public:
  using Error::Error;
};

class UnknownNameError : public Error {
public:
  using Error::Error;
};

// Group-file syntax error, with 1-based position.
class ParseError : public Error {
public:
  ParseError(std::string msg, std::size_t line, std::size_t col)
      : Error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(col)),
        line_(line),
        col_(col) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

private:
  std::size_t line_;
  std::size_t col_;
};

} // namespace hallstone
