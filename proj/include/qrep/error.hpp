#pragma once

#include <stdexcept>
#include <string>

namespace qrep {

enum class ErrorCode {
    NotPrime,
    ReducibleModulus,
    DegreeMismatch,
    FieldMismatch,
    DivisionByZero,
    WrongCharacteristic,
    NoNonSquare,
    DegenerateForm,
    DimensionMismatch,
    DimensionNotTwo,
    DimensionNotThree,
    IsotropicSplitVector,
    DegenerateRestriction,
    AnisotropicForm,
    OneNotRepresented,
    CapExceeded,
    NotApplicable,
    NoRouteApplicable,
    ParseError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace qrep
