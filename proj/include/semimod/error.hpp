#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace semimod {

/// Domain error categories. The CLI prints the name and exits with status 1.
enum class ErrorKind {
  NotCoprime,
  BadOrder,
  NotAGap,
  NotInSemigroup,
  DifferenceInSemigroup,
  NotIncreasing,
  TooLarge,
  ArityMismatch,
  TruncationMismatch,
  BadMode,
  InternalInconsistency,
  Unsolvable,
  VerificationFailed,
  ZeroGenerator,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::BadOrder: return "BadOrder";
    case ErrorKind::NotAGap: return "NotAGap";
    case ErrorKind::NotInSemigroup: return "NotInSemigroup";
    case ErrorKind::DifferenceInSemigroup: return "DifferenceInSemigroup";
    case ErrorKind::NotIncreasing: return "NotIncreasing";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::TruncationMismatch: return "TruncationMismatch";
    case ErrorKind::BadMode: return "BadMode";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::Unsolvable: return "Unsolvable";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::ZeroGenerator: return "ZeroGenerator";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace semimod
