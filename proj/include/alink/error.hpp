#pragma once

#include <stdexcept>
#include <string>

namespace alink {

// Mirrors alink_status in alink.h; keep the numeric values in sync.
enum class ErrorCode : int {
  UnknownGenerator = 1,
  SpecMismatch,
  IdentityInput,
  Unsupported,
  NotInCentralizer,
  EndpointMismatch,
  LatitudeMismatch,
  NotSelfTrace,
  NonVanishingLinking,
  DimensionMismatch,
  ParseError,
  UnresolvedReference,
  InvariantViolation,
  InvalidArgument,
  Overflow,
  Io,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace alink
