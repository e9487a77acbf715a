#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gsk {

enum class ErrorCode {
  InvalidPermutation,
  GroupTooLarge,
  ElementNotInGroup,
  InvalidSpec,
  NotPrimePower,
  ParseError,
  NotAPGroup,
  RootIsGkType,
  NotASubgroup,
  NonIntegralGenus,
  NonCoprime,
  OutOfRegime,
  BudgetExceeded,
  Undecidable,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base of every exception thrown by the library. The code is stable and is
/// what the CLI reports in its machine-readable error document.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error(ErrorCode::ParseError, message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace gsk
