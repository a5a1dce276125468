#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mcf {

enum class ErrorKind {
  InvalidArgument,
  ParseError,
  ZeroVector,
  OutOfDomain,
  TieBoundary,
  NotIrreducible,
  NonReturn,
  UnknownNode,
  ZeroEntry,
  NotInOmega,
  NoLargerEntry,
  DimensionTooLarge,
  InvariantViolation,
};

std::string_view to_string(ErrorKind kind) noexcept;

// All library failures surface as this one exception type; callers switch on
// kind() when they need to distinguish boundary events from misuse.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::TieBoundary: return "TieBoundary";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::NonReturn: return "NonReturn";
    case ErrorKind::UnknownNode: return "UnknownNode";
    case ErrorKind::ZeroEntry: return "ZeroEntry";
    case ErrorKind::NotInOmega: return "NotInOmega";
    case ErrorKind::NoLargerEntry: return "NoLargerEntry";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace mcf
