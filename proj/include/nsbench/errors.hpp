#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nsbench {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated precondition: dimension mismatch, empty input, invalid parameter.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// A value or subgradient came out NaN or infinite.
class NumericalDomainError : public Error {
 public:
  using Error::Error;
};

class LineSearchFailure : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

#define NSBENCH_REQUIRE(cond, msg)                    \
  do {                                                \
    if (!(cond)) throw ::nsbench::ContractViolation(msg); \
  } while (0)

}  // namespace nsbench
