#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace foresight {

enum class ErrorCode {
  InvalidSchema,
  InvalidSpace,
  ProfileLengthMismatch,
  RangeMismatch,
  UnknownAtom,
  UniverseMismatch,
  EmptySubset,
  NegativeMass,
  EmptyFocalSet,
  NotNormalized,
  LatticeTooLarge,
  KindMismatch,
  AllMassUnforeseeable,
  MissingUtility,
  InvalidUtility,
  SpaceTooLarge,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidSchema: return "InvalidSchema";
    case ErrorCode::InvalidSpace: return "InvalidSpace";
    case ErrorCode::ProfileLengthMismatch: return "ProfileLengthMismatch";
    case ErrorCode::RangeMismatch: return "RangeMismatch";
    case ErrorCode::UnknownAtom: return "UnknownAtom";
    case ErrorCode::UniverseMismatch: return "UniverseMismatch";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::NegativeMass: return "NegativeMass";
    case ErrorCode::EmptyFocalSet: return "EmptyFocalSet";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::LatticeTooLarge: return "LatticeTooLarge";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::AllMassUnforeseeable: return "AllMassUnforeseeable";
    case ErrorCode::MissingUtility: return "MissingUtility";
    case ErrorCode::InvalidUtility: return "InvalidUtility";
    case ErrorCode::SpaceTooLarge: return "SpaceTooLarge";
  }
  return "Unknown";
}

/// Raised by every validating constructor and operation in the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace foresight
