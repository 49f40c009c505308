#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace selfsim {

enum class ErrorCode {
  ZeroInverse,
  Singular,
  DimensionMismatch,
  Inconsistent,
  KindMismatch,
  SyntaxError,
  NotAUnit,
  NonzeroConstantTerm,
  OutOfWindow,
  NotDivisible,
  DegreeTooLarge,
  SearchExhausted,
  UnknownPreset,
  NotPrime,
  BoxTooLarge,
  IOError,
  InvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI, the Python bindings) can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorCode::SyntaxError, what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace selfsim
