#pragma once

#include <stdexcept>
#include <string>

namespace ybx {

enum class ErrorCode {
  InvalidDimension,
  DimMismatch,
  NotHermitian,
  NotUnitary,
  NotNormalized,
  IndexOutOfRange,
  WrongAngleCount,
  UnknownCurve,
  EmptyEnsemble,
  NoSolutionFound,
  Parse,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::WrongAngleCount: return "WrongAngleCount";
    case ErrorCode::UnknownCurve: return "UnknownCurve";
    case ErrorCode::EmptyEnsemble: return "EmptyEnsemble";
    case ErrorCode::NoSolutionFound: return "NoSolutionFound";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ybx
