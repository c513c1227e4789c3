#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace skewcalc {

enum class ErrorCode {
  FieldMismatch,
  DivisionByZero,
  SyntaxError,
  NegativeExponent,
  AlgebraMismatch,
  InconsistentRules,
  BadSigma,
  BadDelta,
  BadInverse,
  TailDegree,
  BadParams,
  UnsupportedGwa,
  NotADomain,
  ResourceLimit,
  InsufficientData,
  MissingEvidence,
  FactorizationIncomplete,
  ValidationError,
  Usage,
  Internal,
};

std::string_view error_code_name(ErrorCode code);

/// Process exit status for an error class: 1 usage, 2 parse, 3 validation,
/// 4 resource, 5 internal.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based line/column (column only for single-line input).
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : Error(ErrorCode::SyntaxError, format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    return message + " at line " + std::to_string(line) + ", column " + std::to_string(column);
  }
  std::size_t line_;
  std::size_t column_;
};

}  // namespace skewcalc
