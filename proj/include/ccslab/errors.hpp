#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ccslab {

// Base for every domain error raised by the library. The CLI maps these to
// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegreeError : public Error {
 public:
  using Error::Error;
};

class SpaceMismatch : public Error {
 public:
  using Error::Error;
};

class CutError : public Error {
 public:
  using Error::Error;
};

class AmbiguousValue : public Error {
 public:
  using Error::Error;
};

class TargetIsOnes : public Error {
 public:
  TargetIsOnes() : Error("target is 1^inf; use the constant map instead") {}
};

class TargetIsZeros : public Error {
 public:
  TargetIsZeros() : Error("target is 0^inf; use the constant map instead") {}
};

class DepthError : public Error {
 public:
  using Error::Error;
};

class EmptySetError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed textual input. Carries the offending position so callers can
// print a caret under it.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string input, std::size_t position)
      : Error(what), input_(std::move(input)), position_(position) {}

  const std::string& input() const noexcept { return input_; }
  std::size_t position() const noexcept { return position_; }

  // "<input>\n    ^ <message>"
  std::string caret_message() const {
    return input_ + "\n" + std::string(position_, ' ') + "^ " + what();
  }

 private:
  std::string input_;
  std::size_t position_;
};

}  // namespace ccslab
