#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace torus {

enum class ErrorCode {
  OutOfHorizon,
  QuadratureFailure,
  NonVanishing,
  IllConditioned,
  OverflowGuard,
  InsufficientData,
  NotInK,
  BadLadder,
  Unclassifiable,
  MalformedStructure,
  InvalidArgument,
  Schema,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfHorizon: return "OutOfHorizon";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::NonVanishing: return "NonVanishing";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::OverflowGuard: return "OverflowGuard";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::NotInK: return "NotInK";
    case ErrorCode::BadLadder: return "BadLadder";
    case ErrorCode::Unclassifiable: return "Unclassifiable";
    case ErrorCode::MalformedStructure: return "MalformedStructure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Schema: return "Schema";
  }
  return "Unknown";
}

}  // namespace torus
