#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fptenum {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input text could not be parsed. line() is 1-based; 0 means "end of input".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line), message_(message) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A size guard (brute-force width, free-variable count) was exceeded.
class GuardError : public Error {
 public:
  using Error::Error;
};

// A kernelizer produced a kernel larger than its own declared size bound.
class KernelBudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace fptenum
