#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace graphcap {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  CapExceeded,
  Timeout,
  NonConstantC,
  Unsupported,
  EdgelessGraph,
  NotIndependent,
  NoHomomorphism,
  NumericFailure,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::CapExceeded: return "CAP_EXCEEDED";
    case ErrorCode::Timeout: return "TIMEOUT";
    case ErrorCode::NonConstantC: return "NON_CONSTANT_C";
    case ErrorCode::Unsupported: return "UNSUPPORTED";
    case ErrorCode::EdgelessGraph: return "EDGELESS_GRAPH";
    case ErrorCode::NotIndependent: return "NOT_INDEPENDENT";
    case ErrorCode::NoHomomorphism: return "NO_HOMOMORPHISM";
    case ErrorCode::NumericFailure: return "NUMERIC_FAILURE";
  }
  return "UNKNOWN";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map them onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace graphcap
