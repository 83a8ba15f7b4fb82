#include "qrep/error.hpp"

namespace qrep {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::WrongCharacteristic: return "WrongCharacteristic";
    case ErrorCode::NoNonSquare: return "NoNonSquare";
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DimensionNotTwo: return "DimensionNotTwo";
    case ErrorCode::DimensionNotThree: return "DimensionNotThree";
    case ErrorCode::IsotropicSplitVector: return "IsotropicSplitVector";
    case ErrorCode::DegenerateRestriction: return "DegenerateRestriction";
    case ErrorCode::AnisotropicForm: return "AnisotropicForm";
    case ErrorCode::OneNotRepresented: return "OneNotRepresented";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::NoRouteApplicable: return "NoRouteApplicable";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "UnknownError";
}

} // namespace qrep
