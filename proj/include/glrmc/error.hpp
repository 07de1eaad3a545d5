#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace glrmc {

enum class ErrorCode {
  RaggedRows,
  IllegalCharacter,
  Empty,
  IndexOutOfRange,
  InvalidK,
  QueryEntryPresent,
  WrongBasisSize,
  NotAPreservableBasis,
  PreconditionViolated,
  DimensionMismatch,
  PrimeTooSmall,
  NotPrime,
  BudgetExceeded,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::IllegalCharacter: return "IllegalCharacter";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::QueryEntryPresent: return "QueryEntryPresent";
    case ErrorCode::WrongBasisSize: return "WrongBasisSize";
    case ErrorCode::NotAPreservableBasis: return "NotAPreservableBasis";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::PrimeTooSmall: return "PrimeTooSmall";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every recoverable failure in the library is reported as an Error
/// carrying a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failures also remember the 1-based data row / entry column (0 when
/// the failure has no position, e.g. an empty file).
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t row, std::size_t col, const std::string& what)
      : Error(code, row == 0 ? what
                             : what + " (row " + std::to_string(row) + ", col " +
                                   std::to_string(col) + ")"),
        row_(row),
        col_(col) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

}  // namespace glrmc
