#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cmgate {

enum class ErrorCode {
    CompositeP,
    CharTooSmall,
    SizeExceeded,
    ContextMismatch,
    DivisionByZero,
    NotASubfield,
    ZeroElement,
    ZeroPolynomial,
    BothConstantInX,
    ConstantPolynomial,
    SupersingularInput,
    UnsupportedLevel,
    ProviderDisagreement,
    NotADiscriminant,
    PInert,
    PDividesD,
    BothZero,
    SearchCeilingExceeded,
    EqualPrimes,
    BadExponent,
    IndexDivisibleByP,
    NoWitnessInBound,
    ParseError,
    WrongVariables,
    ReducibleCurve,
    DegenerateCurve,
    ConstantRingElement,
    DataFile,
    InvalidArgument,
};

inline std::string_view error_name(ErrorCode c)
{
    switch (c) {
    case ErrorCode::CompositeP: return "CompositeP";
    case ErrorCode::CharTooSmall: return "CharTooSmall";
    case ErrorCode::SizeExceeded: return "SizeExceeded";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotASubfield: return "NotASubfield";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::BothConstantInX: return "BothConstantInX";
    case ErrorCode::ConstantPolynomial: return "ConstantPolynomial";
    case ErrorCode::SupersingularInput: return "SupersingularInput";
    case ErrorCode::UnsupportedLevel: return "UnsupportedLevel";
    case ErrorCode::ProviderDisagreement: return "ProviderDisagreement";
    case ErrorCode::NotADiscriminant: return "NotADiscriminant";
    case ErrorCode::PInert: return "PInert";
    case ErrorCode::PDividesD: return "PDividesD";
    case ErrorCode::BothZero: return "BothZero";
    case ErrorCode::SearchCeilingExceeded: return "SearchCeilingExceeded";
    case ErrorCode::EqualPrimes: return "EqualPrimes";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::IndexDivisibleByP: return "IndexDivisibleByP";
    case ErrorCode::NoWitnessInBound: return "NoWitnessInBound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::WrongVariables: return "WrongVariables";
    case ErrorCode::ReducibleCurve: return "ReducibleCurve";
    case ErrorCode::DegenerateCurve: return "DegenerateCurve";
    case ErrorCode::ConstantRingElement: return "ConstantRingElement";
    case ErrorCode::DataFile: return "DataFile";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// The single exception type thrown by the library; `code()` identifies the failure.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string & message)
        : std::runtime_error(std::string(error_name(code)) + ": " + message)
        , code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

} // namespace cmgate
