#pragma once

#include <stdexcept>
#include <string>

namespace k3 {

enum class ErrorCode {
    ZeroWeight,
    UnsupportedPrime,
    NotInvertible,
    NonIntegerGenus,
    Inconsistent,
    Ambiguous,
    NoConfiguration,
    CongruenceViolation,
    NoSuchRow,
    NotMirrorHyperbolic,
    InvalidPair,
    ParseError,
    DataError
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + msg), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

} // namespace k3
