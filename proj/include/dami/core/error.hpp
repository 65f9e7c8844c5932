#pragma once

#include <stdexcept>
#include <string>

namespace dami {

enum class ErrorCode {
    Validation,
    Parse,
    NullSpace,
    NegativeBase,
    ZeroInvariant,
    Budget,
    Io,
    InvalidArgument,
    Internal,
};

/// Single exception type used across the core; carries a machine-readable
/// code so the C boundary can translate it into a status without string
/// matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Validation: return "validation";
        case ErrorCode::Parse: return "parse";
        case ErrorCode::NullSpace: return "null-space";
        case ErrorCode::NegativeBase: return "negative-base";
        case ErrorCode::ZeroInvariant: return "zero-invariant";
        case ErrorCode::Budget: return "budget";
        case ErrorCode::Io: return "io";
        case ErrorCode::InvalidArgument: return "invalid-argument";
        case ErrorCode::Internal: return "internal";
    }
    return "unknown";
}

}  // namespace dami
