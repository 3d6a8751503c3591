// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace thompson {

enum class ErrorCode {
  SyntaxError,
  NotDyadic,
  NotMonotone,
  BadEndpoints,
  SlopeNotPowerOfTwo,
  OutOfDomain,
  NonDyadicScale,
  NonDyadicCut,
  IdentityInput,
  BadIntervals,
  TrivialConstant,
  ConstantNotSupported,
  UnboundVariable,
  TrivialH,
  BadEdge,
  BudgetExceeded,
  ArityMismatch,
  InvalidArgument,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::NotDyadic: return "NotDyadic";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::BadEndpoints: return "BadEndpoints";
    case ErrorCode::SlopeNotPowerOfTwo: return "SlopeNotPowerOfTwo";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NonDyadicScale: return "NonDyadicScale";
    case ErrorCode::NonDyadicCut: return "NonDyadicCut";
    case ErrorCode::IdentityInput: return "IdentityInput";
    case ErrorCode::BadIntervals: return "BadIntervals";
    case ErrorCode::TrivialConstant: return "TrivialConstant";
    case ErrorCode::ConstantNotSupported: return "ConstantNotSupported";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::TrivialH: return "TrivialH";
    case ErrorCode::BadEdge: return "BadEdge";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Domain error raised by every module. `name()` is the stable identifier the
/// CLI prints on its error stream.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& what)
      : Error(ErrorCode::SyntaxError, "at byte " + std::to_string(offset) + ": " + what),
        offset_(offset),
        detail_(what) {}

  std::size_t offset() const noexcept { return offset_; }
  /// Message without the position prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t offset_;
  std::string detail_;
};

}  // namespace thompson
