#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pumldiff {

enum class ErrorCode {
  MalformedArrow,
  UnterminatedBlock,
  MalformedPatch,
  KindMismatch,
  EmptyDataset,
  InvalidBins,
  InvalidManifest,
  InvalidOption,
  UnresolvableFile,
  Io,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedArrow: return "MalformedArrow";
    case ErrorCode::UnterminatedBlock: return "UnterminatedBlock";
    case ErrorCode::MalformedPatch: return "MalformedPatch";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::InvalidBins: return "InvalidBins";
    case ErrorCode::InvalidManifest: return "InvalidManifest";
    case ErrorCode::InvalidOption: return "InvalidOption";
    case ErrorCode::UnresolvableFile: return "UnresolvableFile";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library. `line()` is the 1-based line in
/// whatever input the error refers to (script or patch), or 0 when unknown.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0)
      : std::runtime_error(message), code_(code), line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::size_t line_;
};

}  // namespace pumldiff
