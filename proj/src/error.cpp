#include "alink/error.hpp"

namespace alink {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::IdentityInput: return "IdentityInput";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::NotInCentralizer: return "NotInCentralizer";
    case ErrorCode::EndpointMismatch: return "EndpointMismatch";
    case ErrorCode::LatitudeMismatch: return "LatitudeMismatch";
    case ErrorCode::NotSelfTrace: return "NotSelfTrace";
    case ErrorCode::NonVanishingLinking: return "NonVanishingLinking";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnresolvedReference: return "UnresolvedReference";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace alink
